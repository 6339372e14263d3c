#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "apia/cli.hpp"

namespace apia {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

// Loads and parses one input; prints diagnostics and returns nullopt on error.
template <typename T, typename Parse>
std::optional<T> load(const std::string& path, const char* what, std::ostream& err, Parse parse) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << what << " file '" << path << "'\n";
    return std::nullopt;
  }
  auto result = parse(*text);
  err << format_diagnostics(result.diagnostics, path);
  if (!result.ok()) return std::nullopt;
  return std::move(*result.value);
}

struct Inputs {
  std::string domain;
  std::string policy;
  std::string scenario;
};

std::string verdict_line(const Domain& d, ActionId a, const ActionVerdict& v) {
  const std::string& n = d.action(a).name;
  std::vector<std::string> parts;
  if (v.permitted == Tri::Undetermined) {
    parts.push_back("permitted(" + n + ") undetermined");
  } else {
    parts.push_back((v.permitted == Tri::True ? "permitted(" : "-permitted(") + n + ")");
  }
  if (v.obl_do != Tri::Undetermined) parts.push_back((v.obl_do == Tri::True ? "obl(" : "-obl(") + n + ")");
  if (v.obl_refrain != Tri::Undetermined) {
    parts.push_back((v.obl_refrain == Tri::True ? "obl(neg(" : "-obl(neg(") + n + "))");
  }
  return join(parts, ", ");
}

}  // namespace

void ManualSession::help() const {
  out_ << "commands:\n"
          "  step [n]   run n loop iterations (default 1)\n"
          "  state      full valuation at the current step\n"
          "  diff       changes against the previous step\n"
          "  verdicts   policy conclusions at the current step\n"
          "  plan       remaining activity or the plan the agent would choose\n"
          "  validity   input-validity notes\n"
          "  help       this text\n"
          "  quit       leave\n";
}

bool ManualSession::handle(const std::string& line) {
  std::istringstream ss(line);
  std::string cmd;
  if (!(ss >> cmd)) return true;
  if (cmd == "quit" || cmd == "exit") return false;
  if (cmd == "step") {
    int n = 1;
    ss >> n;
    step(std::max(n, 1));
  } else if (cmd == "state") {
    state();
  } else if (cmd == "diff") {
    diff();
  } else if (cmd == "verdicts") {
    verdicts();
  } else if (cmd == "plan") {
    plan();
  } else if (cmd == "validity") {
    validity();
  } else if (cmd == "help") {
    help();
  } else {
    out_ << "unknown command '" << cmd << "'\n";
    help();
  }
  return true;
}

void ManualSession::step(int count) {
  for (int i = 0; i < count; ++i) {
    if (agent_.quiescent()) {
      out_ << "scenario complete\n";
      return;
    }
    out_ << format_text(agent_.run_iteration()) << "\n";
  }
}

void ManualSession::state() {
  agent_.prepare();
  const Domain& d = agent_.domain();
  const State& s = agent_.belief().back();
  out_ << "state at step " << agent_.step() << ":\n";
  for (FluentId f = 0; f < d.fluent_count(); ++f) {
    out_ << "  " << (s.holds(f) ? "" : "-") << d.fluent(f).name << "\n";
  }
  out_ << "  " << describe(agent_.belief_compliance().back()) << "\n";
  out_ << "  " << describe(agent_.mental(), d) << "\n";
}

void ManualSession::diff() {
  agent_.prepare();
  const int n = agent_.step();
  if (n == 0) {
    out_ << "no previous step\n";
    return;
  }
  const Domain& d = agent_.domain();
  const State& before = agent_.belief()[n - 1];
  const State& after = agent_.belief()[n];
  out_ << "changes from step " << n - 1 << " to " << n << ":\n";
  bool any = false;
  for (FluentId f = 0; f < d.fluent_count(); ++f) {
    if (before.holds(f) == after.holds(f)) continue;
    out_ << "  " << d.fluent(f).name << ": " << (before.holds(f) ? "true" : "false") << " -> "
         << (after.holds(f) ? "true" : "false") << "\n";
    any = true;
  }
  const auto& cb = agent_.belief_compliance()[n - 1];
  const auto& ca = agent_.belief_compliance()[n];
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<WaiverKind>(k);
    if (cb[kind] == ca[kind]) continue;
    out_ << "  " << compliance_fluent_name(kind) << ": " << (cb[kind] ? "true" : "false") << " -> "
         << (ca[kind] ? "true" : "false") << "\n";
    any = true;
  }
  if (const Policy* p = agent_.policy()) {
    const auto vb = derive_verdicts(before, {}, *p, d);
    const auto va = derive_verdicts(after, {}, *p, d);
    for (ActionId a : d.agent_actions()) {
      if (vb[a] == va[a]) continue;
      out_ << "  verdict " << d.action(a).name << ": " << verdict_line(d, a, vb[a]) << " -> "
           << verdict_line(d, a, va[a]) << "\n";
      any = true;
    }
  }
  if (!any) out_ << "  (none)\n";
}

void ManualSession::verdicts() {
  agent_.prepare();
  const Policy* p = agent_.policy();
  if (p == nullptr) {
    out_ << "no policy loaded\n";
    return;
  }
  const Domain& d = agent_.domain();
  const auto v = derive_verdicts(agent_.belief().back(), {}, *p, d);
  out_ << "verdicts at step " << agent_.step() << ":\n";
  for (ActionId a : d.agent_actions()) out_ << "  " << verdict_line(d, a, v[a]) << "\n";
  for (const auto& label : v.defeated) out_ << "  defeated: " << label << "\n";
  for (const auto& w : v.warnings) out_ << "  warning: " << w << "\n";
}

void ManualSession::plan() {
  agent_.prepare();
  const Domain& d = agent_.domain();
  const CompiledDomain& cd = agent_.compiled();
  const State& s = agent_.belief().back();
  if (auto m = agent_.mental().active_activity()) {
    const Activity& act = *find_activity(agent_.activities(), *m);
    const int k = agent_.mental().status_of(*m);
    const std::vector<Component> rest(act.components.begin() + std::min(k, act.length()), act.components.end());
    out_ << "activity " << *m << " at " << k << "/" << act.length() << ", remaining:";
    for (const Component& c : rest) out_ << " [" << d.component_name(c) << "]";
    auto r = apia::replay(cd, s, agent_.belief_compliance().back(), rest);
    out_ << (r ? "\n  cost " + to_string(r->cost) : std::string("\n  not executable from here")) << "\n";
    return;
  }
  if (agent_.mental().active_goals.empty()) {
    out_ << "no active goal\n";
    return;
  }
  const Goal goal = *agent_.mental().active_goals.begin();
  if (auto stored = prefer_stored(cd, agent_.activities(), s, goal)) {
    out_ << "would start stored activity " << stored->id << " cost " << to_string(stored->cost) << "\n";
    return;
  }
  PlanOptions options;
  options.horizon = agent_.config().horizon;
  if (auto p = apia::plan(cd, s, goal, options)) {
    out_ << "would plan:";
    for (const Component& c : p->steps) out_ << " [" << d.component_name(c) << "]";
    out_ << "\n  cost " << to_string(p->cost) << "\n";
  } else {
    out_ << "goal " << d.goal_name(goal) << " is futile within horizon " << options.horizon << "\n";
  }
}

void ManualSession::validity() const {
  if (validity_.empty()) {
    out_ << "no validity notes\n";
    return;
  }
  for (const auto& v : validity_) out_ << "note: " << v << "\n";
}

int apia_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Policy-aware intentional agent simulator", "apia"};
  app.require_subcommand(1);

  Inputs run_in;
  std::string auth_name;
  std::string obl_name;
  std::optional<int> horizon;
  std::optional<int> max_steps;
  bool manual = false;
  bool no_policy = false;
  std::string records_path;
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--domain", run_in.domain, "Domain file (.dom)")->required();
  run->add_option("--policy", run_in.policy, "Policy file (.pol)");
  run->add_option("--scenario", run_in.scenario, "Scenario file (.scn)")->required();
  run->add_option("--auth-mode", auth_name, "Authorization mode")->check(CLI::IsMember(auth_mode_names()));
  run->add_option("--obl-mode", obl_name, "Obligation mode")->check(CLI::IsMember(obl_mode_names()));
  run->add_option("--horizon", horizon, "Planning horizon")->check(CLI::PositiveNumber);
  run->add_option("--max-steps", max_steps, "Step cap")->check(CLI::PositiveNumber);
  run->add_flag("--manual", manual, "Interactive step-through");
  run->add_flag("--no-policy", no_policy, "Compile the policy layer out");
  run->add_option("--records", records_path, "Write JSON records, one per iteration ('-' for stdout)");

  Inputs check_in;
  bool serial = false;
  int depth = 10;
  auto* check = app.add_subcommand("check", "Check policy consistency");
  check->add_option("--domain", check_in.domain, "Domain file (.dom)")->required();
  check->add_option("--policy", check_in.policy, "Policy file (.pol)")->required();
  check->add_option("--scenario", check_in.scenario, "Scenario file giving the initial state");
  check->add_option("--depth", depth, "Search depth for reachable states")->check(CLI::NonNegativeNumber);
  check->add_flag("--serial", serial, "Use the serial reference implementation");

  Inputs val_in;
  auto* validate = app.add_subcommand("validate", "Parse inputs and report validity notes");
  validate->add_option("--domain", val_in.domain, "Domain file (.dom)")->required();
  validate->add_option("--policy", val_in.policy, "Policy file (.pol)");
  validate->add_option("--scenario", val_in.scenario, "Scenario file (.scn)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto load_all = [&](const Inputs& paths, std::optional<Domain>& domain, std::optional<Policy>& policy,
                      std::optional<Scenario>& scenario) {
    domain = load<Domain>(paths.domain, "domain", err, [](std::string_view t) { return parse_domain(t); });
    if (!domain) return false;
    if (!paths.policy.empty()) {
      policy = load<Policy>(paths.policy, "policy", err, [&](std::string_view t) { return parse_policy(t, *domain); });
      if (!policy) return false;
    } else {
      policy = Policy::empty_for(*domain);
    }
    if (!paths.scenario.empty()) {
      scenario =
          load<Scenario>(paths.scenario, "scenario", err, [&](std::string_view t) { return parse_scenario(t, *domain); });
      if (!scenario) return false;
    }
    return true;
  };

  std::optional<Domain> domain;
  std::optional<Policy> policy;
  std::optional<Scenario> scenario;

  if (*validate) {
    if (!load_all(val_in, domain, policy, scenario)) return kExitUsage;
    out << "inputs are valid\n";
    for (const auto& w : policy_coverage_warnings(*policy, *domain)) out << "note: " << w << "\n";
    return kExitOk;
  }

  if (*check) {
    if (!load_all(check_in, domain, policy, scenario)) return kExitUsage;
    const State init = scenario ? initial_state(*domain, *scenario) : make_state(BitSet(domain->fluent_count()), *domain);
    const auto states = consistency_sample(*domain, init, depth);
    const auto report = check_policy_consistency(*policy, *domain, states, serial ? Exec::Serial : Exec::Parallel);
    out << format_report(report, states, *domain);
    return report.consistent() ? kExitOk : kExitInconsistent;
  }

  if (!load_all(run_in, domain, policy, scenario)) return kExitUsage;
  LoopConfig config = LoopConfig::from(*scenario, auth_name.empty() ? std::nullopt : parse_auth_mode(auth_name),
                                       obl_name.empty() ? std::nullopt : parse_obl_mode(obl_name), horizon, max_steps);
  config.policy_layer = !no_policy;

  const State init = initial_state(*domain, *scenario);
  const auto states = consistency_sample(*domain, init, config.horizon);
  const auto report = check_policy_consistency(*policy, *domain, states);
  if (!report.consistent()) {
    err << format_report(report, states, *domain);
    return kExitInconsistent;
  }

  out << "mode: " << config.mode.name() << " (threshold " << config.mode.threshold() << "), horizon "
      << config.horizon << (config.policy_layer ? "" : ", policy layer off") << "\n";
  Agent agent(*domain, &*policy, *scenario, config);
  try {
    if (manual) {
      ManualSession session(agent, policy_coverage_warnings(*policy, *domain), out);
      session.validity();
      session.help();
      std::string line;
      out << "> " << std::flush;
      while (std::getline(in, line)) {
        if (!session.handle(line)) break;
        out << "> " << std::flush;
      }
      out << "\n";
      return kExitOk;
    }
    agent.run();
  } catch (const DiagnosisFailure& e) {
    for (const auto& r : agent.trace()) out << format_text(r) << "\n";
    err << "diagnosis failure: " << e.what() << "\n";
    return kExitDiagnosis;
  } catch (const PolicyInconsistency& e) {
    err << "policy inconsistency: " << e.what() << "\n";
    for (const auto& r : e.rules()) err << "  rule: " << r << "\n";
    return kExitInconsistent;
  }
  for (const auto& r : agent.trace()) out << format_text(r) << "\n";
  out << "final state at step " << agent.step() << ": " << describe(agent.belief().back(), *domain) << "\n";

  if (!records_path.empty()) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (records_path != "-") {
      file.open(records_path);
      if (!file) {
        err << "error: cannot write records to '" << records_path << "'\n";
        return kExitUsage;
      }
      sink = &file;
    }
    for (const auto& r : agent.trace()) *sink << format_json(r) << "\n";
  }
  return kExitOk;
}

}  // namespace apia
