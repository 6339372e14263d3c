#pragma once

// Random-trajectory checks shared by the unit tests and the acceptance run.

#include <random>
#include <string>

#include "oracles/policy_oracle.hpp"
#include "support.hpp"

namespace apia::testing {

struct TrajectoryStats {
  int trajectories = 0;
  int steps = 0;
  int monotonicity_failures = 0;
  int locality_failures = 0;
  int classification_failures = 0;
  std::string first_failure;
};

inline ComplianceClass pointwise_min(const ComplianceClass& a, const ComplianceClass& b) {
  return {std::min(a.authorization, b.authorization), a.obligation_compliant && b.obligation_compliant};
}

// Walks `count` random trajectories over random consistent domains.
inline TrajectoryStats random_trajectories(int count, unsigned seed) {
  TrajectoryStats st;
  std::mt19937 rng(seed);
  auto fail = [&](int& counter, const std::string& what) {
    ++counter;
    if (st.first_failure.empty()) st.first_failure = what + " (trajectory " + std::to_string(st.trajectories) + ")";
  };
  while (st.trajectories < count) {
    auto text = random_text(rng, {2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3),
                                  1 + static_cast<int>(rng() % 6), true, true});
    const Domain d = parse_domain_or_throw(text.domain);
    const Policy p = parse_policy_or_throw(text.policy, d);
    bool consistent = true;
    const BitSet none(d.action_count());
    for (const State& s : exhaustive_states(d)) {
      for (ActionId a : d.agent_actions()) consistent = consistent && !oracle::verdict_by_orders(s, none, a, p).inconsistent;
    }
    if (!consistent) continue;
    const auto auth = *parse_auth_mode(auth_mode_names()[rng() % 6]);
    const auto obl = *parse_obl_mode(obl_mode_names()[rng() % 5]);
    const CompiledDomain cd(d, &p, ModeConfig::of(auth, obl));

    // Random executable trajectory with random usable ignore actions.
    const State init = random_state(rng, d);
    std::vector<ActionSet> steps;
    std::vector<State> states{init};
    const int length = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < length; ++i) {
      ActionSet set;
      set.agent = d.agent_actions()[rng() % d.agent_actions().size()];
      if (rng() % 3 == 0) set.exogenous.push_back(d.exogenous_actions()[0]);
      if (!executable(states.back(), set, d)) continue;
      State next;
      try {
        next = successor(states.back(), set, d);
      } catch (const InconsistentEffects&) {
        continue;
      }
      for (int k = 0; k < 3; ++k) {
        const auto kind = static_cast<WaiverKind>(k == 2 ? 3 : k);
        if (cd.mode().usable(kind) && rng() % 2) set.waivers.push_back({kind, *set.agent});
      }
      for (ActionId b : p.obligation_subjects()) {
        if (cd.mode().usable(WaiverKind::OblDo) && rng() % 3 == 0) set.waivers.push_back({WaiverKind::OblDo, b});
      }
      states.push_back(std::move(next));
      steps.push_back(set);
    }
    if (steps.empty()) continue;
    ++st.trajectories;
    st.steps += static_cast<int>(steps.size());

    auto walk = [&](const std::vector<ActionSet>& sets) {
      std::vector<StepOutcome> out;
      ComplianceFluents c;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        out.push_back(cd.step(states[i], c, sets[i]));
        c = out.back().compliance;
      }
      return out;
    };
    const auto outcomes = walk(steps);
    ComplianceFluents prev;
    for (const auto& o : outcomes) {
      for (int k = 0; k < 4; ++k) {
        if (o.compliance.values[k] && !prev.values[k]) fail(st.monotonicity_failures, "compliance fluent rose");
      }
      prev = o.compliance;
    }

    // Dropping the ignore actions of one step only changes that step.
    const std::size_t i = rng() % steps.size();
    auto stripped = steps;
    stripped[i].waivers.clear();
    const auto other = walk(stripped);
    for (std::size_t j = 0; j < steps.size(); ++j) {
      if (other[j].degradations != outcomes[j].degradations) fail(st.locality_failures, "degradations moved");
      if (j != i && other[j].waived != outcomes[j].waived) fail(st.locality_failures, "waiver acted at another step");
      if (j < i && !(other[j].compliance == outcomes[j].compliance)) fail(st.locality_failures, "earlier step changed");
    }

    // The trajectory class is the worst class over the remaining steps.
    for (std::size_t now = 0; now <= steps.size(); ++now) {
      ComplianceClass expect;
      for (std::size_t j = now; j < steps.size(); ++j) {
        expect = pointwise_min(expect, classify_action_set(states[j], steps[j], p, d));
      }
      if (!(classify_trajectory(init, steps, p, d, now) == expect)) {
        fail(st.classification_failures, "trajectory class differs from the suffix minimum");
      }
    }
  }
  return st;
}

}  // namespace apia::testing
