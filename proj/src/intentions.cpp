#include "apia/intentions.hpp"

namespace apia {

int MentalState::status_of(ActivityId m) const {
  auto it = status.find(m);
  return it == status.end() ? -1 : it->second;
}

std::optional<ActivityId> MentalState::active_activity() const {
  for (const auto& [m, k] : status) {
    if (k >= 0) return m;
  }
  return std::nullopt;
}

const Activity* find_activity(const std::vector<Activity>& activities, ActivityId id) {
  for (const Activity& a : activities) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

MentalState apply_mental_dynamics(const MentalState& before, const MentalInputs& inputs,
                                  const std::vector<Activity>& activities,
                                  const std::function<bool(const Goal&)>& goal_true) {
  MentalState after = before;
  for (const GoalEvent& e : inputs.goal_events) {
    if (e.select) {
      after.active_goals.insert(e.goal);
    } else {
      after.active_goals.erase(e.goal);
    }
  }
  if (inputs.mental) {
    const ActivityId m = inputs.mental->activity;
    if (find_activity(activities, m) == nullptr) {
      throw IntentionError("unknown activity " + std::to_string(m));
    }
    if (inputs.mental->kind == MentalKind::Start) {
      if (auto active = before.active_activity()) {
        throw IntentionError("start(" + std::to_string(m) + ") while activity " + std::to_string(*active) +
                             " is active");
      }
      after.status[m] = 0;
    } else {
      if (before.status_of(m) < 0) throw IntentionError("stop(" + std::to_string(m) + ") of an inactive activity");
      after.status.erase(m);
    }
  }
  if (inputs.physical) {
    if (auto m = before.active_activity()) {
      const Activity* act = find_activity(activities, *m);
      const int k = before.status_of(*m);
      if (act != nullptr && k < act->length() && act->components[k].action == *inputs.physical) {
        after.status[*m] = k + 1;
      }
    }
  }
  for (auto it = after.active_goals.begin(); it != after.active_goals.end();) {
    it = goal_true(*it) ? after.active_goals.erase(it) : std::next(it);
  }
  return after;
}

std::optional<Component> next_physical_action(const MentalState& mental, const std::vector<Activity>& activities) {
  const auto m = mental.active_activity();
  if (!m) return std::nullopt;
  const Activity* act = find_activity(activities, *m);
  if (act == nullptr) return std::nullopt;
  const int k = mental.status_of(*m);
  if (k >= act->length()) return std::nullopt;
  return act->components[k];
}

std::string describe(const MentalState& mental, const Domain& domain) {
  std::string out = "goals={";
  bool first = true;
  for (const Goal& g : mental.active_goals) {
    out += (first ? "" : ", ") + domain.goal_name(g);
    first = false;
  }
  out += "} activity=";
  if (auto m = mental.active_activity()) {
    out += std::to_string(*m) + ":" + std::to_string(mental.status_of(*m));
  } else {
    out += "none";
  }
  return out;
}

}  // namespace apia
