#pragma once

// The observe / interpret / intend / act loop over a scripted scenario.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apia/compliance.hpp"
#include "apia/intentions.hpp"
#include "apia/planner.hpp"
#include "apia/scenario.hpp"

namespace apia {

struct LoopConfig {
  ModeConfig mode;
  int horizon = 10;
  int max_steps = 50;
  int abduction_bound = 2;  // new unobserved exogenous actions per interpretation
  bool policy_layer = true;
  Exec exec = Exec::Parallel;

  // Scenario values fill in whatever the caller left unset.
  static LoopConfig from(const Scenario& scenario, std::optional<AuthMode> auth = {},
                         std::optional<OblMode> obl = {}, std::optional<int> horizon = {},
                         std::optional<int> max_steps = {});
};

// Step-0 observations with unobserved inertial fluents false.
State initial_state(const Domain& domain, const Scenario& scenario);

class DiagnosisFailure : public std::runtime_error {
 public:
  explicit DiagnosisFailure(const std::string& what) : std::runtime_error(what) {}
};

// What the agent did (or tried) at one step, plus what it learned.
struct StepRecord {
  std::optional<ActionId> physical;  // attempted agent physical action
  std::vector<Waiver> waivers;
  std::optional<MentalAction> mental;
  bool failed = false;  // attempt was not executable
  std::vector<ActionId> exogenous;  // observed happenings
  std::vector<GoalEvent> goal_events;
};

struct IntendedAction {
  enum class Kind { Wait, Start, Stop, Physical };
  Kind kind = Kind::Wait;
  ActivityId activity = 0;
  Component component;
  std::string reason;
};

struct TraceRecord {
  int step = 0;
  std::vector<std::string> abduced;  // "action@step", found this iteration
  std::vector<std::string> goals;
  std::string activity;  // "M:k" or "none"
  std::string compliance;
  std::string intended;
  std::string reason;
  bool executed = true;
  std::vector<std::string> failure;
  std::vector<std::string> events;
  std::vector<std::string> observed;  // observations of step + 1
};

std::string format_text(const TraceRecord& record);
std::string format_json(const TraceRecord& record);

class Agent {
 public:
  Agent(const Domain& domain, const Policy* policy, const Scenario& scenario, LoopConfig config);

  // Interprets observations up to step() and updates the mental state; done
  // once per step. Throws DiagnosisFailure.
  void prepare();
  // Interprets the current step (if not done yet) and reports whether the run
  // should end. Throws DiagnosisFailure.
  bool quiescent();
  // One loop iteration at step(); advances the step. Throws DiagnosisFailure.
  TraceRecord run_iteration();
  // Iterates until quiescent.
  std::vector<TraceRecord> run();

  int step() const { return step_; }
  const LoopConfig& config() const { return config_; }
  const CompiledDomain& compiled() const { return cd_; }
  const Domain& domain() const { return *domain_; }
  const Policy* policy() const { return policy_; }
  const std::vector<Activity>& activities() const { return activities_; }
  const MentalState& mental() const { return mental_; }
  const std::vector<StepRecord>& history() const { return history_; }
  const std::vector<std::pair<ActionId, int>>& abduced() const { return abduced_; }
  // Believed states 0..step() and the compliance fluents at each.
  const std::vector<State>& belief() const { return states_; }
  const std::vector<ComplianceFluents>& belief_compliance() const { return compliance_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }

 private:
  struct Model {
    std::vector<State> states;
    std::vector<ComplianceFluents> compliance;
  };

  void interpret();
  std::optional<Model> replay(const std::vector<std::pair<ActionId, int>>& abduced) const;
  bool consistent(const Model& model) const;
  void update_mental();
  IntendedAction select_intended();
  bool pending_inputs() const;

  const Domain* domain_;
  const Policy* policy_;
  const Scenario* scenario_;
  LoopConfig config_;
  CompiledDomain cd_;
  std::vector<Activity> activities_;
  MentalState mental_;
  std::vector<StepRecord> history_;
  std::map<int, std::vector<FluentLiteral>> observations_;
  std::vector<std::pair<ActionId, int>> abduced_;
  std::vector<std::string> new_abduced_;
  std::vector<State> states_;
  std::vector<ComplianceFluents> compliance_;
  std::vector<TraceRecord> trace_;
  int step_ = 0;
  int prepared_ = -1;
  bool last_futile_ = false;
};

}  // namespace apia
