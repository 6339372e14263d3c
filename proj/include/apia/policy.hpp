#pragma once

// Authorization and obligation policies: parsing, verdict derivation with
// defeasible rules and preferences, consistency checking and compliance
// classification of action sets and trajectories.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apia/ast.hpp"
#include "apia/domain.hpp"
#include "apia/exec.hpp"
#include "apia/transition.hpp"

namespace apia {

struct PolicyRule {
  std::string label;  // ground label, empty for strict rules
  bool defeasible = false;
  Modality modality = Modality::Permitted;
  ActionId subject = 0;
  bool refrain = false;  // subject is neg(a): obl(neg(a)) or -obl(neg(a))
  Condition condition;
  std::string text;
  SourceLoc loc;
};

struct PreferEdge {
  std::string preferred;
  std::string defeated;
  friend auto operator<=>(const PreferEdge&, const PreferEdge&) = default;
};

class Policy {
 public:
  const ast::Policy& syntax() const { return syntax_; }
  const std::vector<PolicyRule>& rules() const { return rules_; }
  const std::vector<PreferEdge>& prefers() const { return prefers_; }
  const std::vector<std::size_t>& rules_for(ActionId a) const { return by_action_[a]; }
  // Prefer edges whose defeated label belongs to a rule about `a`.
  const std::vector<std::size_t>& prefers_for(ActionId a) const { return prefers_by_action_[a]; }
  const std::vector<std::size_t>& rules_labelled(const std::string& label) const;
  // Agent actions mentioned by at least one obl rule.
  const std::vector<ActionId>& obligation_subjects() const { return obligation_subjects_; }
  bool conditions_mention_actions() const { return mentions_actions_; }
  bool empty() const { return rules_.empty(); }

  // An empty policy over `domain` (every action weakly compliant).
  static Policy empty_for(const Domain& domain);

 private:
  friend class PolicyBuilder;

  ast::Policy syntax_;
  std::vector<PolicyRule> rules_;
  std::vector<PreferEdge> prefers_;
  std::vector<std::vector<std::size_t>> by_action_;
  std::vector<std::vector<std::size_t>> prefers_by_action_;
  std::map<std::string, std::vector<std::size_t>> by_label_;
  std::vector<ActionId> obligation_subjects_;
  bool mentions_actions_ = false;
};

ParseResult<Policy> parse_policy(std::string_view text, const Domain& domain);
Policy parse_policy_or_throw(std::string_view text, const Domain& domain);

enum class Tri : std::uint8_t { Undetermined, True, False };

const char* to_string(Tri value);

struct ActionVerdict {
  Tri permitted = Tri::Undetermined;
  Tri obl_do = Tri::Undetermined;       // obl(a) / -obl(a)
  Tri obl_refrain = Tri::Undetermined;  // obl(neg(a)) / -obl(neg(a))
  friend bool operator==(const ActionVerdict&, const ActionVerdict&) = default;
};

struct PolicyVerdictSet {
  std::vector<ActionVerdict> actions;  // indexed by ActionId
  std::set<std::string> defeated;      // labels d with ab(d)
  std::vector<std::string> warnings;

  const ActionVerdict& operator[](ActionId a) const { return actions[a]; }
};

class PolicyInconsistency : public std::runtime_error {
 public:
  PolicyInconsistency(const std::string& what, ActionId action, std::vector<std::string> rules)
      : std::runtime_error(what), action_(action), rules_(std::move(rules)) {}
  ActionId action() const { return action_; }
  const std::vector<std::string>& rules() const { return rules_; }

 private:
  ActionId action_;
  std::vector<std::string> rules_;
};

// Verdict for a single agent action. `defeated` and `warnings` may be null.
ActionVerdict derive_verdict(const State& state, const BitSet& occurring, ActionId action, const Policy& policy,
                             const Domain& domain, std::set<std::string>* defeated = nullptr,
                             std::vector<std::string>* warnings = nullptr);

// Verdicts for every agent action at `state` with `actions` occurring.
// Throws PolicyInconsistency.
PolicyVerdictSet derive_verdicts(const State& state, const ActionSet& actions, const Policy& policy,
                                 const Domain& domain);

enum class AuthLevel : std::uint8_t { NonCompliant = 0, Weak = 1, Strong = 2 };

const char* to_string(AuthLevel level);

struct ComplianceClass {
  AuthLevel authorization = AuthLevel::Strong;
  bool obligation_compliant = true;
  friend bool operator==(const ComplianceClass&, const ComplianceClass&) = default;
};

ComplianceClass classify_action_set(const State& state, const ActionSet& actions, const Policy& policy,
                                    const Domain& domain);

// Steps before `now` are past and always count as compliant. Throws
// std::invalid_argument if the trajectory is not executable.
ComplianceClass classify_trajectory(const State& initial, const std::vector<ActionSet>& steps, const Policy& policy,
                                    const Domain& domain, std::size_t now = 0);

struct ConsistencyViolation {
  std::size_t state_index = 0;
  std::optional<ActionId> occurring;
  std::string message;
  std::vector<std::string> rules;
};

struct ConsistencyReport {
  std::size_t states_checked = 0;
  std::vector<ConsistencyViolation> violations;
  bool consistent() const { return violations.empty(); }
};

// Runs derive_verdicts over every sample state (and, when policy conditions
// mention actions, under each single-action occurrence).
ConsistencyReport check_policy_consistency(const Policy& policy, const Domain& domain,
                                           const std::vector<State>& states, Exec exec = Exec::Parallel);

// Every inertial valuation (only sensible for small domains).
std::vector<State> exhaustive_states(const Domain& domain);
// States reachable from `initial` by single agent or exogenous actions.
std::vector<State> reachable_states(const Domain& domain, const State& initial, int max_depth,
                                    std::size_t max_states = 20000);
// Exhaustive for at most `exhaustive_limit` inertial fluents, else reachable.
std::vector<State> consistency_sample(const Domain& domain, const State& initial, int max_depth,
                                      std::size_t exhaustive_limit = 12);

// Input-validity notes for manual inspection: agent actions no rule
// mentions (never strongly compliant) and labels nothing prefers over.
std::vector<std::string> policy_coverage_warnings(const Policy& policy, const Domain& domain);

// Human-readable report followed by one machine-readable line per violation.
std::string format_report(const ConsistencyReport& report, const std::vector<State>& states, const Domain& domain);

}  // namespace apia
