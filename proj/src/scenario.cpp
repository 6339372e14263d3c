#include "apia/scenario.hpp"

#include <algorithm>

#include "dsl/grounding.hpp"
#include "dsl/lexer.hpp"

namespace apia {
namespace {

using dsl::Cursor;
using dsl::Tok;
using dsl::Token;

std::string parse_mode_name(Cursor& in) {
  std::string name = in.expect(Tok::Ident, "a mode name").text;
  while (in.accept(Tok::Minus)) name += "-" + in.expect(Tok::Ident, "a mode name").text;
  return name;
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

int parse_step(Cursor& in) {
  const Token& t = in.expect(Tok::Number, "a step number");
  const int step = std::stoi(t.text);
  in.expect(Tok::Colon, "':' after the step");
  return step;
}

int parse_positive(Cursor& in, const char* what) {
  const Token& t = in.expect(Tok::Number, what);
  const int v = std::stoi(t.text);
  if (v < 1) throw dsl::SyntaxError{t.loc, std::string(what) + " must be at least 1"};
  return v;
}

bool is_ground(const ast::Term& t) {
  if (t.variable) return false;
  return std::all_of(t.args.begin(), t.args.end(), is_ground);
}

class ScenarioReader {
 public:
  ScenarioReader(const Domain& domain, Scenario& out, std::vector<Diagnostic>& diags)
      : domain_(domain), out_(out), diags_(diags) {}

  void statement(Cursor& in) {
    const SourceLoc loc = in.peek().loc;
    if (in.accept_word("mode")) {
      const std::string auth = parse_mode_name(in);
      const std::string obl = parse_mode_name(in);
      in.expect_end();
      out_.auth_mode = parse_auth_mode(auth);
      out_.obl_mode = parse_obl_mode(obl);
      if (!out_.auth_mode) error(loc, "unknown authorization mode '" + auth + "' (expected one of " + joined(auth_mode_names()) + ")");
      if (!out_.obl_mode) error(loc, "unknown obligation mode '" + obl + "' (expected one of " + joined(obl_mode_names()) + ")");
    } else if (in.accept_word("horizon")) {
      out_.horizon = parse_positive(in, "horizon");
      in.expect_end();
    } else if (in.accept_word("max_steps")) {
      out_.max_steps = parse_positive(in, "max_steps");
      in.expect_end();
    } else if (in.accept_word("observe")) {
      const int step = parse_step(in);
      do {
        observation(step, dsl::parse_literal(in));
      } while (in.accept(Tok::Comma));
      in.expect_end();
    } else if (in.accept_word("event")) {
      const int step = parse_step(in);
      do {
        const SourceLoc at = in.peek().loc;
        event(step, dsl::parse_term(in), at);
      } while (in.accept(Tok::Comma));
      in.expect_end();
    } else {
      in.fail("expected 'mode', 'horizon', 'max_steps', 'observe' or 'event'");
    }
  }

 private:
  void error(SourceLoc loc, std::string message) { diags_.push_back({loc, Severity::Error, std::move(message)}); }

  void observation(int step, const ast::Literal& lit) {
    const SourceLoc loc = lit.atom.loc;
    if (!is_ground(lit.atom)) return error(loc, "observations must be ground");
    const std::string name = dsl::ground_name(lit.atom, {});
    const Signature* sig = domain_.signature(lit.atom.name);
    if (sig != nullptr && sig->category == PredicateCategory::Static) {
      out_.static_observations.push_back({step, name, !lit.negated, loc});
      return;
    }
    auto id = domain_.find_fluent(name);
    if (!id) return error(loc, "observation of undeclared fluent '" + name + "'");
    out_.observations.push_back({step, {*id, !lit.negated}, loc});
  }

  void event(int step, const ast::Term& term, SourceLoc loc) {
    if (!is_ground(term)) return error(loc, "events must be ground");
    if ((term.name == "select" || term.name == "select_goal" || term.name == "abandon") && term.args.size() == 1) {
      ast::Goal g;
      const ast::Term& arg = term.args[0];
      if (arg.name == "policy_compliant" && arg.args.size() == 1) {
        g.policy_compliant = true;
        g.literal.atom = arg.args[0];
      } else {
        g.literal.atom = arg;
      }
      std::string why;
      auto goal = domain_.resolve_goal(g, &why);
      if (!goal) return error(loc, why);
      out_.events.push_back({step, std::nullopt, GoalEvent{term.name != "abandon", *goal}, loc});
      return;
    }
    const std::string name = dsl::ground_name(term, {});
    if (term.name == "start" || term.name == "stop" || term.name == "wait") {
      return error(loc, "'" + name + "' is chosen by the agent and cannot be scripted");
    }
    auto id = domain_.find_action(name);
    if (!id) return error(loc, "event '" + name + "' is not a declared exogenous action");
    if (domain_.is_agent_action(*id)) {
      return error(loc, "'" + name + "' is an agent action; agent actions are chosen by the loop, not scripted");
    }
    out_.events.push_back({step, *id, std::nullopt, loc});
  }

  const Domain& domain_;
  Scenario& out_;
  std::vector<Diagnostic>& diags_;
};

}  // namespace

std::vector<FluentLiteral> Scenario::observations_at(int step) const {
  std::vector<FluentLiteral> out;
  for (const auto& o : observations) {
    if (o.step == step) out.push_back(o.literal);
  }
  return out;
}

std::vector<ScenarioEvent> Scenario::events_at(int step) const {
  std::vector<ScenarioEvent> out;
  for (const auto& e : events) {
    if (e.step == step) out.push_back(e);
  }
  return out;
}

int Scenario::last_input_step() const {
  int last = -1;
  for (const auto& o : observations) last = std::max(last, o.step);
  for (const auto& o : static_observations) last = std::max(last, o.step);
  for (const auto& e : events) last = std::max(last, e.step);
  return last;
}

ParseResult<Scenario> parse_scenario(std::string_view text, const Domain& domain) {
  ParseResult<Scenario> result;
  Scenario scenario;
  ScenarioReader reader(domain, scenario, result.diagnostics);
  for (const auto& statement : dsl::split_statements(text, result.diagnostics)) {
    Cursor in(statement);
    try {
      reader.statement(in);
    } catch (const dsl::SyntaxError& e) {
      result.diagnostics.push_back({e.loc, Severity::Error, e.message});
    }
  }
  if (!has_errors(result.diagnostics)) result.value = std::move(scenario);
  return result;
}

Scenario parse_scenario_or_throw(std::string_view text, const Domain& domain) {
  auto result = parse_scenario(text, domain);
  if (!result.ok()) {
    throw ParseError("scenario has errors:\n" + format_diagnostics(result.diagnostics, "<scenario>"),
                     result.diagnostics);
  }
  return std::move(*result.value);
}

}  // namespace apia
