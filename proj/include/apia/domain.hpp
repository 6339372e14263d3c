#pragma once

// Ground, validated domain descriptions: fluents, physical actions, laws,
// statics and stored activities. Built from a .dom file by parse_domain().

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apia/ast.hpp"
#include "apia/diagnostics.hpp"

namespace apia {

using FluentId = std::uint32_t;
using ActionId = std::uint32_t;
using ActivityId = int;

struct FluentLiteral {
  FluentId fluent = 0;
  bool positive = true;
  friend auto operator<=>(const FluentLiteral&, const FluentLiteral&) = default;
};

// One conjunct of a ground condition. Action literals test occurrence in the
// action set of the same step; negative action literals test non-occurrence.
struct CondLiteral {
  enum class Kind : std::uint8_t { Fluent, Action };
  Kind kind = Kind::Fluent;
  std::uint32_t id = 0;
  bool positive = true;
  friend auto operator<=>(const CondLiteral&, const CondLiteral&) = default;
};

using Condition = std::vector<CondLiteral>;

struct CausalLaw {
  ActionId trigger = 0;
  FluentLiteral head;
  Condition condition;
  std::string text;
  SourceLoc loc;
};

struct StateConstraint {
  FluentId head = 0;
  Condition condition;
  int stratum = 0;
  std::string text;
  SourceLoc loc;
};

struct ExecutabilityLaw {
  ActionId action = 0;
  Condition condition;
  std::string text;
  SourceLoc loc;
};

// The four policy actions: ignore_not_permitted(a), ignore_neg_permitted(a),
// ignore_obl(a) and ignore_obl(neg(a)).
enum class WaiverKind : std::uint8_t { NotPermitted, NegPermitted, OblDo, OblRefrain };

struct Waiver {
  WaiverKind kind = WaiverKind::NotPermitted;
  ActionId action = 0;
  friend auto operator<=>(const Waiver&, const Waiver&) = default;
};

struct Goal {
  FluentLiteral fluent;
  bool policy_compliant = true;
  friend auto operator<=>(const Goal&, const Goal&) = default;
};

struct Component {
  ActionId action = 0;
  std::vector<Waiver> waivers;
  friend bool operator==(const Component&, const Component&) = default;
};

struct Activity {
  ActivityId id = 0;
  Goal goal;
  std::vector<Component> components;
  int length() const { return static_cast<int>(components.size()); }
};

enum class PredicateCategory { Fluent, Static, Action };

struct Signature {
  PredicateCategory category = PredicateCategory::Fluent;
  std::vector<std::string> arg_sorts;
  FluentKind fluent_kind = FluentKind::Inertial;
  Actor actor = Actor::Agent;
};

struct FluentInfo {
  std::string name;  // ground atom, e.g. in_room(alice,r1)
  std::string predicate;
  FluentKind kind = FluentKind::Inertial;
};

struct ActionInfo {
  std::string name;
  std::string predicate;
  Actor actor = Actor::Agent;
};

class Domain {
 public:
  const ast::Domain& syntax() const { return syntax_; }

  std::size_t fluent_count() const { return fluents_.size(); }
  const FluentInfo& fluent(FluentId id) const { return fluents_[id]; }
  std::optional<FluentId> find_fluent(std::string_view ground_name) const;
  const std::vector<FluentId>& inertial_fluents() const { return inertial_; }
  const std::vector<FluentId>& defined_fluents() const { return defined_; }

  std::size_t action_count() const { return actions_.size(); }
  const ActionInfo& action(ActionId id) const { return actions_[id]; }
  std::optional<ActionId> find_action(std::string_view ground_name) const;
  // Ground agent physical actions in name order (the planner's branching order).
  const std::vector<ActionId>& agent_actions() const { return agent_actions_; }
  const std::vector<ActionId>& exogenous_actions() const { return exogenous_actions_; }
  bool is_agent_action(ActionId id) const { return actions_[id].actor == Actor::Agent; }
  // Position of an action in name order; used for deterministic tie-breaking.
  int action_rank(ActionId id) const { return action_rank_[id]; }

  const Signature* signature(std::string_view predicate) const;
  const std::vector<std::string>* sort_members(std::string_view sort) const;
  bool static_holds(const std::string& ground_atom) const { return statics_.count(ground_atom) > 0; }
  const std::set<std::string>& statics() const { return statics_; }

  const std::vector<CausalLaw>& causal_laws() const { return causal_; }
  const std::vector<std::size_t>& causal_laws_for(ActionId id) const { return causal_by_action_[id]; }
  const std::vector<ExecutabilityLaw>& executability_laws() const { return executability_; }
  const std::vector<std::size_t>& executability_laws_for(ActionId id) const {
    return executability_by_action_[id];
  }
  // Sorted by stratum.
  const std::vector<StateConstraint>& state_constraints() const { return constraints_; }
  int strata() const { return strata_; }

  const std::vector<Activity>& activities() const { return activities_; }

  std::string literal_name(FluentLiteral literal) const;
  std::string goal_name(const Goal& goal) const;
  std::string waiver_name(const Waiver& waiver) const;
  std::string component_name(const Component& component) const;

  // Resolves a ground goal such as policy_compliant(greeted_by(alice,bob)).
  std::optional<Goal> resolve_goal(const ast::Goal& goal, std::string* error) const;
  std::optional<Waiver> resolve_waiver(const ast::Term& term, std::string* error) const;

 private:
  friend class DomainBuilder;

  ast::Domain syntax_;
  std::map<std::string, Signature, std::less<>> signatures_;
  std::map<std::string, std::vector<std::string>, std::less<>> sorts_;
  std::set<std::string> statics_;
  std::vector<FluentInfo> fluents_;
  std::vector<FluentId> inertial_;
  std::vector<FluentId> defined_;
  std::unordered_map<std::string, FluentId> fluent_index_;
  std::vector<ActionInfo> actions_;
  std::unordered_map<std::string, ActionId> action_index_;
  std::vector<ActionId> agent_actions_;
  std::vector<ActionId> exogenous_actions_;
  std::vector<int> action_rank_;
  std::vector<CausalLaw> causal_;
  std::vector<std::vector<std::size_t>> causal_by_action_;
  std::vector<ExecutabilityLaw> executability_;
  std::vector<std::vector<std::size_t>> executability_by_action_;
  std::vector<StateConstraint> constraints_;
  int strata_ = 0;
  std::vector<Activity> activities_;
};

// Parses and validates a .dom file. Collects every diagnostic instead of
// stopping at the first one.
ParseResult<Domain> parse_domain(std::string_view text);
Domain parse_domain_or_throw(std::string_view text);

// Built-in names users may not declare.
bool is_builtin_action_name(std::string_view name);

}  // namespace apia
