#include "apia/control_loop.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

namespace apia {
namespace {

std::string joined(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string goal_event_name(const GoalEvent& e, const Domain& d) {
  return std::string(e.select ? "select(" : "abandon(") + d.goal_name(e.goal) + ")";
}

}  // namespace

LoopConfig LoopConfig::from(const Scenario& scenario, std::optional<AuthMode> auth, std::optional<OblMode> obl,
                            std::optional<int> horizon, std::optional<int> max_steps) {
  LoopConfig c;
  c.mode = scenario.mode();
  if (auth) c.mode.auth = *auth;
  if (obl) c.mode.obl = *obl;
  c.horizon = horizon.value_or(scenario.horizon.value_or(10));
  c.max_steps = max_steps.value_or(scenario.max_steps.value_or(50));
  return c;
}

State initial_state(const Domain& domain, const Scenario& scenario) {
  BitSet initial(domain.fluent_count());
  for (const FluentLiteral& l : scenario.observations_at(0)) {
    if (domain.fluent(l.fluent).kind == FluentKind::Inertial) initial.set(l.fluent, l.positive);
  }
  return make_state(std::move(initial), domain, 0);
}

std::string format_text(const TraceRecord& r) {
  std::string out = "step " + std::to_string(r.step) + ": " + r.intended;
  if (!r.executed) out += " [not executable: " + joined(r.failure) + "]";
  if (!r.reason.empty()) out += " (" + r.reason + ")";
  out += "\n  abduced: " + joined(r.abduced);
  out += "\n  goals: " + joined(r.goals) + "; activity: " + r.activity;
  out += "\n  compliance: " + r.compliance;
  out += "\n  happened: " + joined(r.events);
  out += "\n  observed at " + std::to_string(r.step + 1) + ": " + joined(r.observed);
  return out;
}

std::string format_json(const TraceRecord& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["abduced"] = r.abduced;
  j["goals"] = r.goals;
  j["activity"] = r.activity;
  j["compliance"] = r.compliance;
  j["intended"] = r.intended;
  j["reason"] = r.reason;
  j["executed"] = r.executed;
  j["failure"] = r.failure;
  j["events"] = r.events;
  j["observed"] = r.observed;
  return j.dump();
}

Agent::Agent(const Domain& domain, const Policy* policy, const Scenario& scenario, LoopConfig config)
    : domain_(&domain),
      policy_(policy),
      scenario_(&scenario),
      config_(config),
      cd_(domain, config.policy_layer ? policy : nullptr, config.mode),
      activities_(domain.activities()) {
  observations_[0] = scenario.observations_at(0);
}

bool Agent::pending_inputs() const {
  for (const auto& e : scenario_->events) {
    if (e.step >= step_) return true;
  }
  for (const auto& o : scenario_->observations) {
    if (o.step > step_) return true;
  }
  for (const auto& o : scenario_->static_observations) {
    if (o.step > step_) return true;
  }
  return false;
}

bool Agent::quiescent() {
  prepare();
  if (step_ >= config_.max_steps) return true;
  if (pending_inputs() || mental_.active_activity()) return false;
  return mental_.active_goals.empty() || last_futile_;
}

void Agent::prepare() {
  if (prepared_ == step_) return;
  new_abduced_.clear();
  interpret();
  update_mental();
  prepared_ = step_;
}

std::optional<Agent::Model> Agent::replay(const std::vector<std::pair<ActionId, int>>& abduced) const {
  Model m;
  m.states.push_back(initial_state(*domain_, *scenario_));
  m.compliance.emplace_back();
  for (int j = 0; j < step_; ++j) {
    const StepRecord& rec = history_[j];
    ActionSet actions;
    if (rec.physical && !rec.failed) {
      actions.agent = rec.physical;
      actions.waivers = rec.waivers;
    }
    actions.exogenous = rec.exogenous;
    for (const auto& [a, s] : abduced) {
      if (s == j) actions.exogenous.push_back(a);
    }
    const State& from = m.states.back();
    if (!apia::executable(from, actions, *domain_)) return std::nullopt;
    StepOutcome next;
    try {
      next = cd_.step(from, m.compliance.back(), actions);
    } catch (const InconsistentEffects&) {
      return std::nullopt;
    }
    const bool started = rec.mental && rec.mental->kind == MentalKind::Start;
    m.states.push_back(std::move(next.state));
    m.compliance.push_back(started ? ComplianceFluents{} : next.compliance);
  }
  return m;
}

bool Agent::consistent(const Model& model) const {
  for (const auto& [s, lits] : observations_) {
    if (s > step_) continue;
    for (const FluentLiteral& l : lits) {
      if (!model.states[s].holds(l)) return false;
    }
  }
  return true;
}

void Agent::interpret() {
  for (const auto& o : scenario_->static_observations) {
    if (o.step <= step_ && domain_->static_holds(o.atom) != o.positive) {
      throw DiagnosisFailure("observation " + std::string(o.positive ? "" : "-") + o.atom + " at step " +
                             std::to_string(o.step) + " contradicts the static facts");
    }
  }
  auto accept = [&](Model m) {
    states_ = std::move(m.states);
    compliance_ = std::move(m.compliance);
  };
  if (auto m = replay(abduced_); m && consistent(*m)) return accept(std::move(*m));

  // Candidate explanations: name order, later steps first.
  std::vector<ActionId> exo = domain_->exogenous_actions();
  std::sort(exo.begin(), exo.end(),
            [&](ActionId x, ActionId y) { return domain_->action(x).name < domain_->action(y).name; });
  std::vector<std::pair<ActionId, int>> candidates;
  for (ActionId a : exo) {
    for (int s = step_ - 1; s >= 0; --s) {
      if (std::find(abduced_.begin(), abduced_.end(), std::pair{a, s}) == abduced_.end()) candidates.emplace_back(a, s);
    }
  }
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, int)> search = [&](std::size_t from, int left) {
    if (left == 0) {
      auto trial = abduced_;
      for (std::size_t i : pick) trial.push_back(candidates[i]);
      auto m = replay(trial);
      if (!m || !consistent(*m)) return false;
      for (std::size_t i : pick) {
        new_abduced_.push_back(domain_->action(candidates[i].first).name + "@" + std::to_string(candidates[i].second));
      }
      abduced_ = std::move(trial);
      accept(std::move(*m));
      return true;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      pick.push_back(i);
      if (search(i + 1, left - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= config_.abduction_bound; ++k) {
    if (search(0, k)) return;
  }
  std::string unexplained;
  if (auto m = replay(abduced_)) {
    for (const auto& [s, lits] : observations_) {
      if (s > step_) continue;
      for (const FluentLiteral& l : lits) {
        if (!m->states[s].holds(l)) {
          unexplained += (unexplained.empty() ? "" : ", ") + domain_->literal_name(l) + "@" + std::to_string(s);
        }
      }
    }
  } else {
    unexplained = "recorded history is not executable";
  }
  throw DiagnosisFailure("no explanation with at most " + std::to_string(config_.abduction_bound) +
                         " unobserved exogenous actions for: " + unexplained);
}

void Agent::update_mental() {
  if (step_ == 0) return;
  const StepRecord& rec = history_[step_ - 1];
  MentalInputs in;
  in.mental = rec.mental;
  if (rec.physical && !rec.failed) in.physical = rec.physical;
  in.goal_events = rec.goal_events;
  const State& s = states_[step_];
  const ComplianceFluents& c = compliance_[step_];
  mental_ = apply_mental_dynamics(mental_, in, activities_, [&](const Goal& g) { return cd_.goal_holds(g, s, c); });
}

IntendedAction Agent::select_intended() {
  const State& s = states_[step_];
  const ComplianceFluents& c = compliance_[step_];
  IntendedAction ia;
  last_futile_ = false;
  if (auto m = mental_.active_activity()) {
    const Activity& act = *find_activity(activities_, *m);
    const int k = mental_.status_of(*m);
    ia.kind = IntendedAction::Kind::Stop;
    ia.activity = *m;
    if (k >= act.length()) {
      ia.reason = "activity " + std::to_string(*m) + " finished";
      return ia;
    }
    if (!mental_.goal_active(act.goal)) {
      ia.reason = "goal " + domain_->goal_name(act.goal) + " no longer active";
      return ia;
    }
    const std::vector<Component> suffix(act.components.begin() + k, act.components.end());
    if (!achieves(cd_, s, c, suffix, act.goal)) {
      ia.reason = "activity " + std::to_string(*m) + " can no longer achieve " + domain_->goal_name(act.goal);
      return ia;
    }
    ia.kind = IntendedAction::Kind::Physical;
    ia.component = act.components[k];
    ia.reason = "activity " + std::to_string(*m) + " component " + std::to_string(k + 1) + "/" +
                std::to_string(act.length());
    return ia;
  }
  if (mental_.active_goals.empty()) {
    ia.reason = "no active goal";
    return ia;
  }
  const Goal goal = *mental_.active_goals.begin();
  if (auto choice = prefer_stored(cd_, activities_, s, goal)) {
    ia.kind = IntendedAction::Kind::Start;
    ia.activity = choice->id;
    ia.reason = "stored activity " + std::to_string(choice->id) + " cost " + to_string(choice->cost);
    return ia;
  }
  PlanOptions options;
  options.horizon = config_.horizon;
  options.exec = config_.exec;
  if (auto p = plan(cd_, s, goal, options); p && !p->steps.empty()) {
    ActivityId id = 0;
    for (const Activity& a : activities_) id = std::max(id, a.id);
    ++id;
    std::string shape;
    for (const Component& comp : p->steps) shape += (shape.empty() ? "" : "; ") + domain_->component_name(comp);
    activities_.push_back(Activity{id, goal, p->steps});
    ia.kind = IntendedAction::Kind::Start;
    ia.activity = id;
    ia.reason = "planned activity " + std::to_string(id) + " [" + shape + "] cost " + to_string(p->cost);
    return ia;
  }
  last_futile_ = true;
  ia.reason = "goal " + domain_->goal_name(goal) + " is futile within horizon " + std::to_string(config_.horizon);
  return ia;
}

TraceRecord Agent::run_iteration() {
  prepare();
  TraceRecord r;
  r.step = step_;
  r.abduced = new_abduced_;
  for (const Goal& g : mental_.active_goals) r.goals.push_back(domain_->goal_name(g));
  if (auto m = mental_.active_activity()) {
    r.activity = std::to_string(*m) + ":" + std::to_string(mental_.status_of(*m));
  } else {
    r.activity = "none";
  }
  r.compliance = describe(compliance_[step_]);

  const IntendedAction ia = select_intended();
  r.reason = ia.reason;
  StepRecord rec;
  for (const ScenarioEvent& e : scenario_->events_at(step_)) {
    if (e.action) {
      rec.exogenous.push_back(*e.action);
      r.events.push_back(domain_->action(*e.action).name);
    } else {
      rec.goal_events.push_back(*e.goal_event);
      r.events.push_back(goal_event_name(*e.goal_event, *domain_));
    }
  }
  switch (ia.kind) {
    case IntendedAction::Kind::Wait:
      r.intended = "wait";
      break;
    case IntendedAction::Kind::Start:
    case IntendedAction::Kind::Stop: {
      const bool start = ia.kind == IntendedAction::Kind::Start;
      rec.mental = MentalAction{start ? MentalKind::Start : MentalKind::Stop, ia.activity};
      r.intended = std::string(start ? "start(" : "stop(") + std::to_string(ia.activity) + ")";
      break;
    }
    case IntendedAction::Kind::Physical: {
      ActionSet actions = cd_.admissible_form(ActionSet::of(ia.component.action, ia.component.waivers));
      r.intended = domain_->component_name({ia.component.action, actions.waivers});
      rec.physical = ia.component.action;
      rec.waivers = actions.waivers;
      // The attempt happens alongside whatever else occurs at this step.
      actions.exogenous = rec.exogenous;
      try {
        const Executability ex = cd_.executable(states_[step_], actions);
        rec.failed = !ex;
        r.failure = ex.reasons;
      } catch (const DanglingWaiver& e) {
        rec.failed = true;
        r.failure = {e.what()};
      }
      r.executed = !rec.failed;
      break;
    }
  }
  history_.push_back(std::move(rec));
  observations_[step_ + 1] = scenario_->observations_at(step_ + 1);
  for (const FluentLiteral& l : observations_[step_ + 1]) r.observed.push_back(domain_->literal_name(l));
  for (const auto& o : scenario_->static_observations) {
    if (o.step == step_ + 1) r.observed.push_back((o.positive ? "" : "-") + o.atom);
  }
  ++step_;
  trace_.push_back(r);
  return r;
}

std::vector<TraceRecord> Agent::run() {
  while (!quiescent()) run_iteration();
  return trace_;
}

}  // namespace apia
