#include "apia/policy.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_set>

namespace apia {
namespace {

// The six literal kinds a rule about action a can conclude.
enum Kind : int { kP = 0, kNP, kO, kNO, kOR, kNOR, kKinds };

constexpr std::array<const char*, kKinds> kKindNames = {"permitted", "-permitted", "obl", "-obl", "obl(neg)",
                                                        "-obl(neg)"};

// Symmetric conflict relation as adjacency bitmasks.
constexpr std::array<unsigned, kKinds> kConflicts = {
    (1U << kNP) | (1U << kOR),  // P
    (1U << kP) | (1U << kO),    // NP
    (1U << kNP) | (1U << kNO),  // O
    (1U << kO),                 // NO
    (1U << kP) | (1U << kNOR),  // OR
    (1U << kOR),                // NOR
};

Kind kind_of(const PolicyRule& r) {
  switch (r.modality) {
    case Modality::Permitted:
      return kP;
    case Modality::NotPermitted:
      return kNP;
    case Modality::Obl:
      return r.refrain ? kOR : kO;
    case Modality::NotObl:
      return r.refrain ? kNOR : kNO;
  }
  return kP;
}

bool independent(unsigned set) {
  for (int k = 0; k < kKinds; ++k) {
    if ((set >> k & 1U) && (kConflicts[k] & set)) return false;
  }
  return true;
}

// Intersection of all maximal independent subsets of `candidates`.
unsigned skeptical_core(unsigned candidates) {
  unsigned core = candidates;
  for (unsigned s = candidates;; s = (s - 1) & candidates) {
    if (independent(s)) {
      bool maximal = true;
      for (int k = 0; k < kKinds && maximal; ++k) {
        const unsigned bit = 1U << k;
        if ((candidates & bit) && !(s & bit) && !(kConflicts[k] & s)) maximal = false;
      }
      if (maximal) core &= s;
    }
    if (s == 0) break;
  }
  return core;
}

Tri tri(unsigned derived, Kind yes, Kind no) {
  if (derived >> yes & 1U) return Tri::True;
  if (derived >> no & 1U) return Tri::False;
  return Tri::Undetermined;
}

bool label_active(const std::string& label, const Policy& policy, const State& state, const BitSet& occurring) {
  for (std::size_t i : policy.rules_labelled(label)) {
    if (condition_holds(policy.rules()[i].condition, state.values, occurring)) return true;
  }
  return false;
}

}  // namespace

const char* to_string(Tri value) {
  switch (value) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    case Tri::Undetermined:
      break;
  }
  return "undetermined";
}

const char* to_string(AuthLevel level) {
  switch (level) {
    case AuthLevel::Strong:
      return "strong";
    case AuthLevel::Weak:
      return "weak";
    case AuthLevel::NonCompliant:
      break;
  }
  return "non-compliant";
}

ActionVerdict derive_verdict(const State& state, const BitSet& occurring, ActionId action, const Policy& policy,
                             const Domain& domain, std::set<std::string>* defeated,
                             std::vector<std::string>* warnings) {
  const auto& rules = policy.rules();
  const auto& mine = policy.rules_for(action);

  unsigned strict = 0;
  std::array<std::vector<std::string>, kKinds> strict_by;
  for (std::size_t i : mine) {
    const PolicyRule& r = rules[i];
    if (r.defeasible || !condition_holds(r.condition, state.values, occurring)) continue;
    const Kind k = kind_of(r);
    strict |= 1U << k;
    strict_by[k].push_back(r.text);
  }
  if (!independent(strict)) {
    std::vector<std::string> offending;
    std::string pairs;
    for (int k = 0; k < kKinds; ++k) {
      if (!(strict >> k & 1U) || !(kConflicts[k] & strict)) continue;
      for (const auto& t : strict_by[k]) {
        if (std::find(offending.begin(), offending.end(), t) == offending.end()) offending.push_back(t);
      }
      for (int j = k + 1; j < kKinds; ++j) {
        if ((strict >> j & 1U) && (kConflicts[k] >> j & 1U)) {
          pairs += std::string(pairs.empty() ? "" : ", ") + kKindNames[k] + " vs " + kKindNames[j];
        }
      }
    }
    const std::string& name = domain.action(action).name;
    throw PolicyInconsistency("policy is inconsistent for " + name + " (" + pairs + ")", action, offending);
  }

  std::set<std::string> ab;
  for (std::size_t e : policy.prefers_for(action)) {
    const PreferEdge& edge = policy.prefers()[e];
    if (label_active(edge.preferred, policy, state, occurring)) ab.insert(edge.defeated);
  }

  unsigned candidates = 0;
  for (std::size_t i : mine) {
    const PolicyRule& r = rules[i];
    if (!r.defeasible || ab.count(r.label) || !condition_holds(r.condition, state.values, occurring)) continue;
    candidates |= 1U << kind_of(r);
  }
  unsigned blocked = strict;
  for (int k = 0; k < kKinds; ++k) {
    if (strict >> k & 1U) blocked |= kConflicts[k];
  }
  candidates &= ~blocked;
  const unsigned core = skeptical_core(candidates);
  const unsigned derived = strict | core;

  if (warnings != nullptr && core != candidates) {
    std::string contested;
    for (int k = 0; k < kKinds; ++k) {
      if ((candidates & ~core) >> k & 1U) contested += std::string(contested.empty() ? "" : ", ") + kKindNames[k];
    }
    warnings->push_back("conflicting defeasible conclusions for " + domain.action(action).name + " (" + contested +
                        "); left undetermined");
  }
  if (defeated != nullptr) defeated->insert(ab.begin(), ab.end());

  ActionVerdict v;
  v.permitted = tri(derived, kP, kNP);
  v.obl_do = tri(derived, kO, kNO);
  v.obl_refrain = tri(derived, kOR, kNOR);
  return v;
}

PolicyVerdictSet derive_verdicts(const State& state, const ActionSet& actions, const Policy& policy,
                                 const Domain& domain) {
  PolicyVerdictSet out;
  out.actions.assign(domain.action_count(), ActionVerdict{});
  const BitSet occ = actions.occurrences(domain.action_count());
  for (ActionId a : domain.agent_actions()) {
    out.actions[a] = derive_verdict(state, occ, a, policy, domain, &out.defeated, &out.warnings);
  }
  return out;
}

ComplianceClass classify_action_set(const State& state, const ActionSet& actions, const Policy& policy,
                                    const Domain& domain) {
  ComplianceClass c;
  const BitSet occ = actions.occurrences(domain.action_count());
  if (actions.agent) {
    switch (derive_verdict(state, occ, *actions.agent, policy, domain).permitted) {
      case Tri::True:
        c.authorization = AuthLevel::Strong;
        break;
      case Tri::Undetermined:
        c.authorization = AuthLevel::Weak;
        break;
      case Tri::False:
        c.authorization = AuthLevel::NonCompliant;
        break;
    }
  }
  for (ActionId b : policy.obligation_subjects()) {
    const ActionVerdict v = derive_verdict(state, occ, b, policy, domain);
    const bool happens = occ.test(b);
    if ((v.obl_do == Tri::True && !happens) || (v.obl_refrain == Tri::True && happens)) {
      c.obligation_compliant = false;
    }
  }
  return c;
}

ComplianceClass classify_trajectory(const State& initial, const std::vector<ActionSet>& steps, const Policy& policy,
                                    const Domain& domain, std::size_t now) {
  ComplianceClass total;
  State s = initial;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Executability ex = executable(s, steps[i], domain);
    if (!ex) {
      throw std::invalid_argument("trajectory step " + std::to_string(i) + " is not executable: " +
                                  (ex.reasons.empty() ? std::string() : ex.reasons.front()));
    }
    if (i >= now) {
      const ComplianceClass c = classify_action_set(s, steps[i], policy, domain);
      total.authorization = std::min(total.authorization, c.authorization);
      total.obligation_compliant = total.obligation_compliant && c.obligation_compliant;
    }
    s = successor(s, steps[i], domain);
  }
  return total;
}

namespace {

void check_one(const Policy& policy, const Domain& domain, const State& state, std::size_t index,
               const std::optional<ActionId>& occurring, std::vector<ConsistencyViolation>& out) {
  BitSet occ(domain.action_count());
  if (occurring) occ.set(*occurring);
  for (ActionId a : domain.agent_actions()) {
    try {
      derive_verdict(state, occ, a, policy, domain);
    } catch (const PolicyInconsistency& e) {
      out.push_back({index, occurring, e.what(), e.rules()});
    }
  }
}

void check_state(const Policy& policy, const Domain& domain, const State& state, std::size_t index,
                 std::vector<ConsistencyViolation>& out) {
  check_one(policy, domain, state, index, std::nullopt, out);
  if (!policy.conditions_mention_actions()) return;
  for (ActionId a = 0; a < domain.action_count(); ++a) check_one(policy, domain, state, index, a, out);
}

}  // namespace

ConsistencyReport check_policy_consistency(const Policy& policy, const Domain& domain,
                                           const std::vector<State>& states, Exec exec) {
  ConsistencyReport report;
  report.states_checked = states.size();
  std::vector<std::vector<ConsistencyViolation>> per_state(states.size());
  const auto n = static_cast<std::ptrdiff_t>(states.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      check_state(policy, domain, states[i], static_cast<std::size_t>(i), per_state[i]);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      check_state(policy, domain, states[i], static_cast<std::size_t>(i), per_state[i]);
    }
  }
  for (auto& v : per_state) {
    for (auto& x : v) report.violations.push_back(std::move(x));
  }
  return report;
}

std::vector<State> exhaustive_states(const Domain& domain) {
  const auto& inertial = domain.inertial_fluents();
  if (inertial.size() > 24) throw std::invalid_argument("too many inertial fluents for exhaustive enumeration");
  std::vector<State> out;
  const std::uint64_t total = std::uint64_t{1} << inertial.size();
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    BitSet v(domain.fluent_count());
    for (std::size_t i = 0; i < inertial.size(); ++i) {
      if (m >> i & 1U) v.set(inertial[i]);
    }
    out.push_back(make_state(std::move(v), domain));
  }
  return out;
}

std::vector<State> reachable_states(const Domain& domain, const State& initial, int max_depth,
                                    std::size_t max_states) {
  std::vector<State> out{initial};
  std::unordered_set<BitSet, BitSetHash> seen{initial.values};
  std::deque<std::pair<std::size_t, int>> queue{{0, 0}};
  std::vector<ActionSet> moves;
  for (ActionId a : domain.agent_actions()) moves.push_back(ActionSet::of(a));
  for (ActionId a : domain.exogenous_actions()) {
    ActionSet s;
    s.exogenous.push_back(a);
    moves.push_back(s);
  }
  while (!queue.empty() && out.size() < max_states) {
    auto [index, depth] = queue.front();
    queue.pop_front();
    if (depth >= max_depth) continue;
    for (const ActionSet& m : moves) {
      const State from = out[index];
      if (!executable(from, m, domain)) continue;
      State next;
      try {
        next = successor(from, m, domain);
      } catch (const InconsistentEffects&) {
        continue;
      }
      next.step = 0;
      if (!seen.insert(next.values).second) continue;
      out.push_back(std::move(next));
      queue.emplace_back(out.size() - 1, depth + 1);
      if (out.size() >= max_states) break;
    }
  }
  return out;
}

std::vector<State> consistency_sample(const Domain& domain, const State& initial, int max_depth,
                                      std::size_t exhaustive_limit) {
  if (domain.inertial_fluents().size() <= exhaustive_limit) return exhaustive_states(domain);
  return reachable_states(domain, initial, max_depth);
}

std::vector<std::string> policy_coverage_warnings(const Policy& policy, const Domain& domain) {
  std::vector<std::string> out;
  for (ActionId a : domain.agent_actions()) {
    if (policy.rules_for(a).empty()) {
      out.push_back("no policy statement describes " + domain.action(a).name + "; it is at best weakly compliant");
    }
  }
  return out;
}

std::string format_report(const ConsistencyReport& report, const std::vector<State>& states, const Domain& domain) {
  std::string out;
  if (report.consistent()) {
    out += "policy consistent over " + std::to_string(report.states_checked) + " states\n";
    return out;
  }
  out += "policy inconsistent: " + std::to_string(report.violations.size()) + " violation(s) over " +
         std::to_string(report.states_checked) + " states\n";
  for (const auto& v : report.violations) {
    out += "  state " + std::to_string(v.state_index) + " {" + describe(states[v.state_index], domain) + "}";
    if (v.occurring) out += " with " + domain.action(*v.occurring).name;
    out += ": " + v.message + "\n";
    for (const auto& r : v.rules) out += "    rule: " + r + "\n";
  }
  for (const auto& v : report.violations) {
    out += "violation state=" + std::to_string(v.state_index);
    out += " occurring=" + (v.occurring ? domain.action(*v.occurring).name : std::string("none"));
    out += " rules=";
    for (std::size_t i = 0; i < v.rules.size(); ++i) out += (i ? "|" : "") + v.rules[i];
    out += "\n";
  }
  return out;
}

}  // namespace apia
