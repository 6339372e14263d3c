#pragma once

// Policy layer over the transition engine: behavior modes, the four
// compliance fluents, ignore actions and the policy_compliant(f) test.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apia/domain.hpp"
#include "apia/policy.hpp"
#include "apia/transition.hpp"

namespace apia {

enum class AuthMode { Paranoid, Cautious, BestEffort, Subordinate, SubordinateWhenPossible, Utilitarian };
enum class OblMode { Subordinate, PermitOmissions, PermitCommissions, BestEffort, Utilitarian };

// How a mode treats one compliance fluent and its paired ignore action.
//   Require: fluent must stay true, the ignore action is forbidden.
//   Prefer:  fluent must stay true, the ignore action is allowed but costs.
//   Disregard: fluent is not part of policy_compliant, the ignore action is never used.
enum class Handling { Require, Prefer, Disregard };

std::optional<AuthMode> parse_auth_mode(std::string_view name);
std::optional<OblMode> parse_obl_mode(std::string_view name);
const char* to_string(AuthMode mode);
const char* to_string(OblMode mode);
const char* to_string(Handling handling);
std::vector<std::string> auth_mode_names();
std::vector<std::string> obl_mode_names();

struct ModeConfig {
  AuthMode auth = AuthMode::Utilitarian;
  OblMode obl = OblMode::Utilitarian;

  static ModeConfig of(AuthMode a, OblMode o) { return {a, o}; }

  // Indexed by WaiverKind: NotPermitted pairs with auth_compliance(strong),
  // NegPermitted with auth_compliance(weak), OblDo with
  // obl_compliant(do_action), OblRefrain with obl_compliant(refrain_from_action).
  Handling handling(WaiverKind kind) const;
  bool forbidden(WaiverKind kind) const { return handling(kind) == Handling::Require; }
  bool usable(WaiverKind kind) const { return handling(kind) == Handling::Prefer; }
  // "strong", "weak" or "none": weakest authorization level policy_compliant accepts.
  std::string threshold() const;
  std::string name() const;

  friend bool operator==(const ModeConfig&, const ModeConfig&) = default;
};

// auth_compliance(strong), auth_compliance(weak), obl_compliant(do_action),
// obl_compliant(refrain_from_action); indexed by WaiverKind.
struct ComplianceFluents {
  std::array<bool, 4> values{true, true, true, true};

  bool operator[](WaiverKind k) const { return values[static_cast<int>(k)]; }
  bool& operator[](WaiverKind k) { return values[static_cast<int>(k)]; }
  bool strong() const { return values[0]; }
  bool weak() const { return values[1]; }
  bool obl_do() const { return values[2]; }
  bool obl_refrain() const { return values[3]; }

  friend auto operator<=>(const ComplianceFluents&, const ComplianceFluents&) = default;
};

const char* compliance_fluent_name(WaiverKind kind);
std::string describe(const ComplianceFluents& fluents);

// Lexicographic plan cost. Ordered by (nc + obl, weak, length, nc).
struct CostVector {
  int nc = 0;      // ignore_neg_permitted
  int weak = 0;    // ignore_not_permitted
  int obl = 0;     // ignore_obl(a) and ignore_obl(neg(a))
  int length = 0;

  int waivers() const { return nc + weak + obl; }
  void add(const Waiver& w);
  std::array<int, 4> key() const { return {nc + obl, weak, length, nc}; }
  friend bool operator==(const CostVector&, const CostVector&) = default;
  friend auto operator<=>(const CostVector& a, const CostVector& b) { return a.key() <=> b.key(); }
};

std::string to_string(const CostVector& cost);

class DanglingWaiver : public std::invalid_argument {
 public:
  explicit DanglingWaiver(const std::string& what) : std::invalid_argument(what) {}
};

struct StepOutcome {
  State state;
  ComplianceFluents compliance;
  std::vector<Waiver> degradations;  // every degradation the step triggered
  std::vector<Waiver> waived;        // the subset suppressed by ignore actions
};

// A domain with its policy compiled in under one mode. Without a policy the
// layer is compiled out: nothing degrades, waivers are dropped and
// policy_compliant(f) reduces to f.
class CompiledDomain {
 public:
  CompiledDomain(const Domain& domain, const Policy* policy, ModeConfig mode)
      : domain_(&domain), policy_(policy), mode_(mode) {}

  const Domain& domain() const { return *domain_; }
  const Policy* policy() const { return policy_; }
  const ModeConfig& mode() const { return mode_; }
  bool policy_layer() const { return policy_ != nullptr; }

  // Drops ignore actions the mode never uses (and all of them when the policy
  // layer is compiled out).
  ActionSet admissible_form(const ActionSet& actions) const;

  // Physical executability plus the unconditional block on forbidden ignore
  // actions. Throws DanglingWaiver.
  Executability executable(const State& state, const ActionSet& actions) const;

  // Degradations laws (i)-(iv) would cause at `state` if no ignore action
  // occurred, one entry per law instance, named by the waiver that
  // suppresses it.
  std::vector<Waiver> degradations(const State& state, const ActionSet& actions) const;

  ComplianceFluents apply(const ComplianceFluents& before, const std::vector<Waiver>& degradations,
                          const std::vector<Waiver>& waivers) const;

  // Precondition: executable(state, actions).
  StepOutcome step(const State& state, const ComplianceFluents& compliance, const ActionSet& actions) const;

  bool policy_compliant(FluentLiteral f, const State& state, const ComplianceFluents& compliance) const;
  bool goal_holds(const Goal& goal, const State& state, const ComplianceFluents& compliance) const;

  // Ignore actions the planner must add to run `action` at `state` without
  // breaking a required conjunct; nullopt if some needed waiver is forbidden.
  std::optional<std::vector<Waiver>> required_waivers(const State& state, ActionId action) const;

 private:
  const Domain* domain_;
  const Policy* policy_;
  ModeConfig mode_;
};

}  // namespace apia
