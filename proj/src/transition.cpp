#include "apia/transition.hpp"

#include <algorithm>

namespace apia {

bool ActionSet::occurs(ActionId a) const {
  return (agent && *agent == a) || std::find(exogenous.begin(), exogenous.end(), a) != exogenous.end();
}

BitSet ActionSet::occurrences(std::size_t action_count) const {
  BitSet occ(action_count);
  if (agent) occ.set(*agent);
  for (ActionId a : exogenous) occ.set(a);
  return occ;
}

bool condition_holds(const Condition& condition, const BitSet& values, const BitSet& occurring) {
  for (const CondLiteral& lit : condition) {
    const bool v = lit.kind == CondLiteral::Kind::Fluent ? values.test(lit.id) : occurring.test(lit.id);
    if (v != lit.positive) return false;
  }
  return true;
}

void validate_action_set(const ActionSet& actions, const Domain& domain) {
  if (actions.agent) {
    if (*actions.agent >= domain.action_count() || !domain.is_agent_action(*actions.agent)) {
      throw std::invalid_argument("agent slot holds a non-agent action");
    }
  }
  for (ActionId a : actions.exogenous) {
    if (a >= domain.action_count() || domain.is_agent_action(a)) {
      throw std::invalid_argument("agent action '" + domain.action(a).name + "' listed as exogenous");
    }
  }
}

BitSet close_defined(const BitSet& values, const Domain& domain) {
  BitSet out = values;
  for (FluentId f : domain.defined_fluents()) out.set(f, false);
  const auto& rules = domain.state_constraints();
  const BitSet no_actions(domain.action_count());
  std::size_t begin = 0;
  while (begin < rules.size()) {
    std::size_t end = begin;
    while (end < rules.size() && rules[end].stratum == rules[begin].stratum) ++end;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = begin; i < end; ++i) {
        if (!out.test(rules[i].head) && condition_holds(rules[i].condition, out, no_actions)) {
          out.set(rules[i].head);
          changed = true;
        }
      }
    }
    begin = end;
  }
  return out;
}

State make_state(BitSet inertial, const Domain& domain, int step) {
  State s;
  s.values = close_defined(inertial, domain);
  s.step = step;
  return s;
}

Executability executable(const State& state, const ActionSet& actions, const Domain& domain) {
  Executability result;
  const BitSet occ = actions.occurrences(domain.action_count());
  auto check = [&](ActionId a) {
    for (std::size_t i : domain.executability_laws_for(a)) {
      const auto& law = domain.executability_laws()[i];
      if (condition_holds(law.condition, state.values, occ)) {
        result.executable = false;
        result.reasons.push_back(domain.action(a).name + ": " + law.text);
      }
    }
  };
  if (actions.agent) check(*actions.agent);
  for (ActionId a : actions.exogenous) check(a);
  return result;
}

State successor(const State& state, const ActionSet& actions, const Domain& domain) {
  const BitSet occ = actions.occurrences(domain.action_count());
  // Fluent -> index of the first law forcing it true / false.
  std::vector<const CausalLaw*> make_true(domain.fluent_count(), nullptr);
  std::vector<const CausalLaw*> make_false(domain.fluent_count(), nullptr);
  std::vector<std::string> conflicts;
  auto fire = [&](ActionId a) {
    for (std::size_t i : domain.causal_laws_for(a)) {
      const CausalLaw& law = domain.causal_laws()[i];
      if (!condition_holds(law.condition, state.values, occ)) continue;
      auto& mine = law.head.positive ? make_true : make_false;
      auto& theirs = law.head.positive ? make_false : make_true;
      if (theirs[law.head.fluent] != nullptr) {
        conflicts.push_back(domain.fluent(law.head.fluent).name + " forced both ways by '" +
                            theirs[law.head.fluent]->text + "' and '" + law.text + "'");
      }
      if (mine[law.head.fluent] == nullptr) mine[law.head.fluent] = &law;
    }
  };
  if (actions.agent) fire(*actions.agent);
  for (ActionId a : actions.exogenous) fire(a);
  if (!conflicts.empty()) {
    std::string what = "contradictory direct effects:";
    for (const auto& c : conflicts) what += "\n  " + c;
    throw InconsistentEffects(what);
  }
  BitSet next = state.values;
  for (FluentId f : domain.inertial_fluents()) {
    if (make_true[f] != nullptr) next.set(f, true);
    if (make_false[f] != nullptr) next.set(f, false);
  }
  State out;
  out.values = close_defined(next, domain);
  out.step = state.step + 1;
  return out;
}

std::string describe(const State& state, const Domain& domain, bool include_false) {
  std::string out;
  for (FluentId f = 0; f < domain.fluent_count(); ++f) {
    const bool v = state.holds(f);
    if (!v && !include_false) continue;
    if (!out.empty()) out += ", ";
    out += (v ? "" : "-") + domain.fluent(f).name;
  }
  return out;
}

std::string describe(const ActionSet& actions, const Domain& domain) {
  std::vector<std::string> parts;
  if (actions.agent) parts.push_back(domain.action(*actions.agent).name);
  for (ActionId a : actions.exogenous) parts.push_back(domain.action(a).name);
  for (const Waiver& w : actions.waivers) parts.push_back(domain.waiver_name(w));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out.empty() ? "none" : out;
}

}  // namespace apia
