#pragma once

// Cost-optimal activity generation and selection among stored activities.

#include <optional>
#include <vector>

#include "apia/compliance.hpp"
#include "apia/exec.hpp"

namespace apia {

struct Plan {
  std::vector<Component> steps;
  CostVector cost;
  friend bool operator==(const Plan&, const Plan&) = default;
};

struct PlanOptions {
  int horizon = 10;
  ComplianceFluents compliance;  // fluents at the first step (fresh by default)
  Exec exec = Exec::Parallel;
};

// Minimal plan under CostVector order, ties broken by the sequence of action
// names. nullopt means the goal is futile within the horizon.
std::optional<Plan> plan(const CompiledDomain& cd, const State& start, const Goal& goal, const PlanOptions& options);

struct Replay {
  State state;
  ComplianceFluents compliance;
  CostVector cost;
};

// Runs `steps` from `start`; nullopt if some step is not executable, has
// contradictory effects or carries a dangling ignore action.
std::optional<Replay> replay(const CompiledDomain& cd, const State& start, const ComplianceFluents& compliance,
                             const std::vector<Component>& steps);

// True if running `steps` from `start` ends with `goal` true.
bool achieves(const CompiledDomain& cd, const State& start, const ComplianceFluents& compliance,
              const std::vector<Component>& steps, const Goal& goal);

struct StoredChoice {
  ActivityId id = 0;
  CostVector cost;
};

// Cheapest stored activity for `goal` that is executable and achieves the
// goal from `start`; ties go to the smaller id.
std::optional<StoredChoice> prefer_stored(const CompiledDomain& cd, const std::vector<Activity>& activities,
                                          const State& start, const Goal& goal,
                                          const ComplianceFluents& compliance = {});

}  // namespace apia
