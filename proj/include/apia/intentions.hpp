#pragma once

// Theory of intentions: active goals and activity progress.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "apia/domain.hpp"

namespace apia {

// status(M) = -1 when inactive, otherwise the number of executed components.
struct MentalState {
  std::set<Goal> active_goals;
  std::map<ActivityId, int> status;  // absent means -1

  int status_of(ActivityId m) const;
  std::optional<ActivityId> active_activity() const;
  bool goal_active(const Goal& g) const { return active_goals.count(g) > 0; }

  friend bool operator==(const MentalState&, const MentalState&) = default;
};

enum class MentalKind { Start, Stop };

struct MentalAction {
  MentalKind kind = MentalKind::Start;
  ActivityId activity = 0;
  friend bool operator==(const MentalAction&, const MentalAction&) = default;
};

struct GoalEvent {
  bool select = true;  // select(G) or abandon(G)
  Goal goal;
  friend bool operator==(const GoalEvent&, const GoalEvent&) = default;
};

// Everything relevant to the mental state that occurred at one step.
struct MentalInputs {
  std::optional<MentalAction> mental;
  std::optional<ActionId> physical;  // executed agent physical action
  std::vector<GoalEvent> goal_events;
};

class IntentionError : public std::logic_error {
 public:
  explicit IntentionError(const std::string& what) : std::logic_error(what) {}
};

const Activity* find_activity(const std::vector<Activity>& activities, ActivityId id);

// `goal_true` evaluates a goal at the successor state; achieved goals are
// dropped. Throws IntentionError on start while another activity is active or
// stop of an inactive activity.
MentalState apply_mental_dynamics(const MentalState& before, const MentalInputs& inputs,
                                  const std::vector<Activity>& activities,
                                  const std::function<bool(const Goal&)>& goal_true);

// C_{k+1} of the active activity, if any component remains.
std::optional<Component> next_physical_action(const MentalState& mental, const std::vector<Activity>& activities);

std::string describe(const MentalState& mental, const Domain& domain);

}  // namespace apia
