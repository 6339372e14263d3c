#pragma once

// Scenario files: observations, scripted exogenous events, mode and limits.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apia/compliance.hpp"
#include "apia/diagnostics.hpp"
#include "apia/domain.hpp"
#include "apia/intentions.hpp"

namespace apia {

struct Observation {
  int step = 0;
  FluentLiteral literal;
  SourceLoc loc;
};

// Observation of a static atom; checked against the domain's facts.
struct StaticObservation {
  int step = 0;
  std::string atom;
  bool positive = true;
  SourceLoc loc;
};

struct ScenarioEvent {
  int step = 0;
  std::optional<ActionId> action;     // exogenous physical action
  std::optional<GoalEvent> goal_event;  // select(G) or abandon(G)
  SourceLoc loc;
};

struct Scenario {
  std::optional<AuthMode> auth_mode;
  std::optional<OblMode> obl_mode;
  std::optional<int> horizon;
  std::optional<int> max_steps;
  std::vector<Observation> observations;
  std::vector<StaticObservation> static_observations;
  std::vector<ScenarioEvent> events;

  ModeConfig mode() const {
    return {auth_mode.value_or(AuthMode::Utilitarian), obl_mode.value_or(OblMode::Utilitarian)};
  }
  std::vector<FluentLiteral> observations_at(int step) const;
  std::vector<ScenarioEvent> events_at(int step) const;
  // Latest step mentioned by any event or observation, -1 if none.
  int last_input_step() const;
};

ParseResult<Scenario> parse_scenario(std::string_view text, const Domain& domain);
Scenario parse_scenario_or_throw(std::string_view text, const Domain& domain);

}  // namespace apia
