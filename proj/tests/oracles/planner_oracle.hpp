#pragma once

// Exhaustive search over every agent-action sequence up to the horizon. The
// mode tables are written out here again so a slip in either copy shows up.

#include <array>
#include <optional>
#include <tuple>

#include "apia/compliance.hpp"
#include "oracles/policy_oracle.hpp"

namespace apia::oracle {

enum class Need { Must, Costly, Ignore };

// strong, weak, obl(a), obl(neg(a))
inline std::array<Need, 4> needs(AuthMode a, OblMode o) {
  std::array<Need, 4> n{};
  switch (a) {
    case AuthMode::Paranoid: n[0] = Need::Must; n[1] = Need::Must; break;
    case AuthMode::Cautious: n[0] = Need::Costly; n[1] = Need::Must; break;
    case AuthMode::BestEffort: n[0] = Need::Costly; n[1] = Need::Costly; break;
    case AuthMode::Subordinate: n[0] = Need::Ignore; n[1] = Need::Must; break;
    case AuthMode::SubordinateWhenPossible: n[0] = Need::Ignore; n[1] = Need::Costly; break;
    case AuthMode::Utilitarian: n[0] = Need::Ignore; n[1] = Need::Ignore; break;
  }
  switch (o) {
    case OblMode::Subordinate: n[2] = Need::Must; n[3] = Need::Must; break;
    case OblMode::PermitOmissions: n[2] = Need::Costly; n[3] = Need::Must; break;
    case OblMode::PermitCommissions: n[2] = Need::Must; n[3] = Need::Costly; break;
    case OblMode::BestEffort: n[2] = Need::Costly; n[3] = Need::Costly; break;
    case OblMode::Utilitarian: n[2] = Need::Ignore; n[3] = Need::Ignore; break;
  }
  return n;
}

struct Cost {
  int nc = 0, weak = 0, obl = 0, length = 0;
  auto key() const { return std::make_tuple(nc + obl, weak, length, nc); }
};

class PlanOracle {
 public:
  PlanOracle(const Domain& d, const Policy& p, AuthMode a, OblMode o) : d_(d), p_(p), needs_(needs(a, o)) {}

  // Cheapest cost reaching policy_compliant(goal), nullopt if none within horizon.
  std::optional<Cost> best(const State& start, FluentLiteral goal, int horizon) {
    best_.reset();
    goal_ = goal;
    horizon_ = horizon;
    dfs(start, Cost{});
    return best_;
  }

 private:
  void dfs(const State& s, Cost c) {
    if (s.holds(goal_) && (!best_ || c.key() < best_->key())) best_ = c;
    if (c.length == horizon_) return;
    for (ActionId a : d_.agent_actions()) {
      const ActionSet set = ActionSet::of(a);
      if (!executable(s, set, d_)) continue;
      const BitSet occ = set.occurrences(d_.action_count());
      // kinds: 0 not permitted, 1 negatively permitted, 2 obligation to do, 3 to refrain
      std::vector<int> hits;
      const ActionVerdict v = verdict_by_orders(s, occ, a, p_).verdict;
      if (v.permitted != Tri::True) hits.push_back(0);
      if (v.permitted == Tri::False) hits.push_back(1);
      if (v.obl_refrain == Tri::True) hits.push_back(3);
      for (ActionId b : d_.agent_actions()) {
        if (b != a && verdict_by_orders(s, occ, b, p_).verdict.obl_do == Tri::True) hits.push_back(2);
      }
      Cost next = c;
      bool allowed = true;
      for (int k : hits) {
        if (needs_[k] == Need::Must) allowed = false;
        if (needs_[k] != Need::Costly) continue;
        (k == 0 ? next.weak : k == 1 ? next.nc : next.obl) += 1;
      }
      if (!allowed) continue;
      ++next.length;
      dfs(successor(s, set, d_), next);
    }
  }

  const Domain& d_;
  const Policy& p_;
  std::array<Need, 4> needs_;
  FluentLiteral goal_;
  int horizon_ = 0;
  std::optional<Cost> best_;
};

// True if no state in `states` makes the strict rules clash for any action.
inline bool consistent_everywhere(const Policy& p, const Domain& d, const std::vector<State>& states) {
  const BitSet none(d.action_count());
  for (const State& s : states) {
    for (ActionId a : d.agent_actions()) {
      if (verdict_by_orders(s, none, a, p).inconsistent) return false;
    }
  }
  return true;
}

}  // namespace apia::oracle
