#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apia/control_loop.hpp"
#include "apia/policy.hpp"

#ifndef APIA_FIXTURE_DIR
#error "APIA_FIXTURE_DIR must point at the scenarios directory"
#endif

namespace apia::testing {

inline std::string fixture_path(const std::string& name) { return std::string(APIA_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream f(fixture_path(name));
  if (!f) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// One office example: letter is a, b, c or d.
struct Office {
  Domain domain;
  Policy policy;
  Scenario scenario;

  explicit Office(char letter)
      : domain(parse_domain_or_throw(read_fixture(std::string("office_") + letter + ".dom"))),
        policy(parse_policy_or_throw(read_fixture(std::string("office_") + letter + ".pol"), domain)),
        scenario(parse_scenario_or_throw(read_fixture(std::string("office_") + letter + ".scn"), domain)) {}

  FluentId fluent(const std::string& name) const { return *domain.find_fluent(name); }
  ActionId action(const std::string& name) const { return *domain.find_action(name); }
  Goal goal(const std::string& fluent_name) const { return Goal{{fluent(fluent_name), true}, true}; }

  // Inertial valuation with exactly `names` true.
  State state(const std::vector<std::string>& names) const {
    BitSet v(domain.fluent_count());
    for (const auto& n : names) v.set(fluent(n));
    return make_state(v, domain);
  }

  std::vector<TraceRecord> run(AuthMode a, OblMode o, bool policy_layer = true) const {
    LoopConfig config = LoopConfig::from(scenario, a, o);
    config.policy_layer = policy_layer;
    Agent agent(domain, &policy, scenario, config);
    return agent.run();
  }
};

inline const TraceRecord* at_step(const std::vector<TraceRecord>& trace, int step) {
  for (const auto& r : trace) {
    if (r.step == step) return &r;
  }
  return nullptr;
}

// Physical and mental actions of a trace, one entry per step.
inline std::vector<std::string> action_projection(const std::vector<TraceRecord>& trace) {
  std::vector<std::string> out;
  for (const auto& r : trace) out.push_back(r.intended + (r.executed ? "" : " (failed)"));
  return out;
}

// Small random domains written in the DSL so every test also goes through
// the parser. Fluents f0.., agent actions a0.., one exogenous action x.
struct RandomSpec {
  int fluents = 3;
  int actions = 3;
  int rules = 4;
  bool defeasible = true;
  bool exogenous = false;
};

struct RandomText {
  std::string domain;
  std::string policy;
};

inline std::string rand_literal(std::mt19937& rng, int fluents) {
  std::uniform_int_distribution<int> f(0, fluents - 1);
  return (rng() % 2 ? "" : "-") + std::string("f") + std::to_string(f(rng));
}

inline RandomText random_text(std::mt19937& rng, const RandomSpec& spec) {
  std::ostringstream dom;
  for (int i = 0; i < spec.fluents; ++i) dom << "inertial fluent f" << i << "\n";
  for (int i = 0; i < spec.actions; ++i) dom << "action a" << i << " physical agent\n";
  if (spec.exogenous) dom << "action x physical exogenous\n";
  const int actors = spec.actions + (spec.exogenous ? 1 : 0);
  for (int i = 0; i < actors; ++i) {
    const std::string name = i < spec.actions ? "a" + std::to_string(i) : "x";
    // Each fluent is the head of at most one law per action, so effects never clash.
    std::vector<int> heads(spec.fluents);
    for (int k = 0; k < spec.fluents; ++k) heads[k] = k;
    std::shuffle(heads.begin(), heads.end(), rng);
    const int effects = 1 + static_cast<int>(rng() % std::min(2, spec.fluents));
    for (int e = 0; e < effects; ++e) {
      dom << name << " causes " << (rng() % 3 == 0 ? "-" : "") << "f" << heads[e];
      if (rng() % 2) dom << " if " << rand_literal(rng, spec.fluents);
      dom << "\n";
    }
    if (rng() % 3 == 0) dom << "impossible " << name << " if " << rand_literal(rng, spec.fluents) << "\n";
  }

  std::ostringstream pol;
  static const char* heads[] = {"permitted(", "-permitted(", "obl(", "-obl(", "obl(-", "-obl(-"};
  std::vector<std::string> labels;
  for (int r = 0; r < spec.rules; ++r) {
    const std::string subject = "a" + std::to_string(rng() % spec.actions);
    // Permissions are more common than obligations, as in real policies.
    const int kind = rng() % 10 < 5 ? static_cast<int>(rng() % 2) : 2 + static_cast<int>(rng() % 4);
    const bool defeasible = spec.defeasible && rng() % 2;
    if (defeasible) {
      labels.push_back("d" + std::to_string(r));
      pol << labels.back() << ": normally ";
    }
    pol << heads[kind] << subject << ")";
    if (rng() % 3 != 0) pol << " if " << rand_literal(rng, spec.fluents);
    pol << "\n";
  }
  if (labels.size() >= 2 && rng() % 2) {
    std::shuffle(labels.begin(), labels.end(), rng);
    pol << "prefer(" << labels[0] << ", " << labels[1] << ")\n";
  }
  return {dom.str(), pol.str()};
}

inline State random_state(std::mt19937& rng, const Domain& d) {
  BitSet v(d.fluent_count());
  for (FluentId f : d.inertial_fluents()) v.set(f, rng() % 2);
  return make_state(v, d);
}

struct RandomDomain {
  Domain domain;
  Policy policy;
};

// Random domain and policy accepted by `accept` (the caller decides what
// counts as consistent).
template <typename Accept>
RandomDomain random_domain(std::mt19937& rng, Accept accept) {
  for (;;) {
    RandomSpec spec;
    spec.fluents = 2 + static_cast<int>(rng() % 3);
    spec.actions = 2 + static_cast<int>(rng() % 3);
    spec.rules = 2 + static_cast<int>(rng() % 5);
    auto text = random_text(rng, spec);
    Domain d = parse_domain_or_throw(text.domain);
    Policy p = parse_policy_or_throw(text.policy, d);
    if (accept(p, d)) return {std::move(d), std::move(p)};
  }
}

// A start state and a goal literal that is false in it.
struct Query {
  State start;
  FluentLiteral goal;
  int horizon = 1;
};

inline Query random_query(std::mt19937& rng, const Domain& d, int max_horizon) {
  Query q{random_state(rng, d), {}, 1 + static_cast<int>(rng() % max_horizon)};
  const FluentId f = d.inertial_fluents()[rng() % d.inertial_fluents().size()];
  q.goal = {f, !q.start.holds(f)};
  return q;
}

inline std::vector<std::pair<AuthMode, OblMode>> all_mode_pairs() {
  std::vector<std::pair<AuthMode, OblMode>> out;
  for (const auto& a : auth_mode_names()) {
    for (const auto& o : obl_mode_names()) out.emplace_back(*parse_auth_mode(a), *parse_obl_mode(o));
  }
  return out;
}

}  // namespace apia::testing
