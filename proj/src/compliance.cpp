#include "apia/compliance.hpp"

#include <algorithm>
#include <utility>

namespace apia {
namespace {

struct AuthRow {
  AuthMode mode;
  const char* name;
  Handling strong;
  Handling weak;
};

struct OblRow {
  OblMode mode;
  const char* name;
  Handling do_action;
  Handling refrain;
};

constexpr AuthRow kAuth[] = {
    {AuthMode::Paranoid, "paranoid", Handling::Require, Handling::Require},
    {AuthMode::Cautious, "cautious", Handling::Prefer, Handling::Require},
    {AuthMode::BestEffort, "best-effort", Handling::Prefer, Handling::Prefer},
    {AuthMode::Subordinate, "subordinate", Handling::Disregard, Handling::Require},
    {AuthMode::SubordinateWhenPossible, "subordinate-when-possible", Handling::Disregard, Handling::Prefer},
    {AuthMode::Utilitarian, "utilitarian", Handling::Disregard, Handling::Disregard},
};

constexpr OblRow kObl[] = {
    {OblMode::Subordinate, "subordinate", Handling::Require, Handling::Require},
    {OblMode::PermitOmissions, "permit-omissions", Handling::Prefer, Handling::Require},
    {OblMode::PermitCommissions, "permit-commissions", Handling::Require, Handling::Prefer},
    {OblMode::BestEffort, "best-effort", Handling::Prefer, Handling::Prefer},
    {OblMode::Utilitarian, "utilitarian", Handling::Disregard, Handling::Disregard},
};

const AuthRow& row(AuthMode m) { return *std::find_if(std::begin(kAuth), std::end(kAuth), [&](auto& r) { return r.mode == m; }); }
const OblRow& row(OblMode m) { return *std::find_if(std::begin(kObl), std::end(kObl), [&](auto& r) { return r.mode == m; }); }

}  // namespace

std::optional<AuthMode> parse_auth_mode(std::string_view name) {
  for (const auto& r : kAuth) {
    if (name == r.name) return r.mode;
  }
  return std::nullopt;
}

std::optional<OblMode> parse_obl_mode(std::string_view name) {
  for (const auto& r : kObl) {
    if (name == r.name) return r.mode;
  }
  return std::nullopt;
}

const char* to_string(AuthMode mode) { return row(mode).name; }
const char* to_string(OblMode mode) { return row(mode).name; }

const char* to_string(Handling handling) {
  switch (handling) {
    case Handling::Require:
      return "require";
    case Handling::Prefer:
      return "prefer";
    case Handling::Disregard:
      break;
  }
  return "disregard";
}

std::vector<std::string> auth_mode_names() {
  std::vector<std::string> out;
  for (const auto& r : kAuth) out.emplace_back(r.name);
  return out;
}

std::vector<std::string> obl_mode_names() {
  std::vector<std::string> out;
  for (const auto& r : kObl) out.emplace_back(r.name);
  return out;
}

Handling ModeConfig::handling(WaiverKind kind) const {
  switch (kind) {
    case WaiverKind::NotPermitted:
      return row(auth).strong;
    case WaiverKind::NegPermitted:
      return row(auth).weak;
    case WaiverKind::OblDo:
      return row(obl).do_action;
    case WaiverKind::OblRefrain:
      return row(obl).refrain;
  }
  return Handling::Disregard;
}

std::string ModeConfig::threshold() const {
  if (handling(WaiverKind::NotPermitted) != Handling::Disregard) return "strong";
  if (handling(WaiverKind::NegPermitted) != Handling::Disregard) return "weak";
  return "none";
}

std::string ModeConfig::name() const { return std::string(to_string(auth)) + "/" + to_string(obl); }

const char* compliance_fluent_name(WaiverKind kind) {
  switch (kind) {
    case WaiverKind::NotPermitted:
      return "auth_compliance(strong)";
    case WaiverKind::NegPermitted:
      return "auth_compliance(weak)";
    case WaiverKind::OblDo:
      return "obl_compliant(do_action)";
    case WaiverKind::OblRefrain:
      break;
  }
  return "obl_compliant(refrain_from_action)";
}

std::string describe(const ComplianceFluents& fluents) {
  std::string out;
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<WaiverKind>(k);
    if (k) out += ", ";
    out += (fluents[kind] ? "" : "-") + std::string(compliance_fluent_name(kind));
  }
  return out;
}

void CostVector::add(const Waiver& w) {
  switch (w.kind) {
    case WaiverKind::NotPermitted:
      ++weak;
      break;
    case WaiverKind::NegPermitted:
      ++nc;
      break;
    case WaiverKind::OblDo:
    case WaiverKind::OblRefrain:
      ++obl;
      break;
  }
}

std::string to_string(const CostVector& cost) {
  return "(" + std::to_string(cost.nc) + "," + std::to_string(cost.weak) + "," + std::to_string(cost.obl) + "," +
         std::to_string(cost.length) + ")";
}

ActionSet CompiledDomain::admissible_form(const ActionSet& actions) const {
  ActionSet out = actions;
  std::erase_if(out.waivers, [&](const Waiver& w) {
    return !policy_layer() || mode_.handling(w.kind) == Handling::Disregard;
  });
  return out;
}

Executability CompiledDomain::executable(const State& state, const ActionSet& actions) const {
  for (const Waiver& w : actions.waivers) {
    if (w.kind != WaiverKind::OblDo && actions.agent != w.action) {
      throw DanglingWaiver(domain_->waiver_name(w) + " occurs without " + domain_->action(w.action).name);
    }
  }
  Executability result = apia::executable(state, actions, *domain_);
  if (!policy_layer()) return result;
  for (const Waiver& w : actions.waivers) {
    if (mode_.forbidden(w.kind)) {
      result.executable = false;
      result.reasons.push_back(domain_->waiver_name(w) + ": forbidden under mode " + mode_.name());
    }
  }
  return result;
}

std::vector<Waiver> CompiledDomain::degradations(const State& state, const ActionSet& actions) const {
  std::vector<Waiver> out;
  if (!policy_layer()) return out;
  const BitSet occ = actions.occurrences(domain_->action_count());
  if (actions.agent) {
    const ActionId a = *actions.agent;
    const ActionVerdict v = derive_verdict(state, occ, a, *policy_, *domain_);
    if (v.permitted != Tri::True) out.push_back({WaiverKind::NotPermitted, a});
    if (v.permitted == Tri::False) out.push_back({WaiverKind::NegPermitted, a});
    if (v.obl_refrain == Tri::True) out.push_back({WaiverKind::OblRefrain, a});
  }
  for (ActionId b : policy_->obligation_subjects()) {
    if (occ.test(b)) continue;
    if (derive_verdict(state, occ, b, *policy_, *domain_).obl_do == Tri::True) out.push_back({WaiverKind::OblDo, b});
  }
  return out;
}

ComplianceFluents CompiledDomain::apply(const ComplianceFluents& before, const std::vector<Waiver>& degradations,
                                        const std::vector<Waiver>& waivers) const {
  ComplianceFluents after = before;
  for (const Waiver& d : degradations) {
    if (std::find(waivers.begin(), waivers.end(), d) == waivers.end()) after[d.kind] = false;
  }
  return after;
}

StepOutcome CompiledDomain::step(const State& state, const ComplianceFluents& compliance,
                                 const ActionSet& actions) const {
  StepOutcome out;
  out.degradations = degradations(state, actions);
  for (const Waiver& d : out.degradations) {
    if (std::find(actions.waivers.begin(), actions.waivers.end(), d) != actions.waivers.end()) out.waived.push_back(d);
  }
  out.compliance = apply(compliance, out.degradations, actions.waivers);
  out.state = successor(state, actions, *domain_);
  return out;
}

bool CompiledDomain::policy_compliant(FluentLiteral f, const State& state, const ComplianceFluents& compliance) const {
  if (!state.holds(f)) return false;
  if (!policy_layer()) return true;
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<WaiverKind>(k);
    if (mode_.handling(kind) != Handling::Disregard && !compliance[kind]) return false;
  }
  return true;
}

bool CompiledDomain::goal_holds(const Goal& goal, const State& state, const ComplianceFluents& compliance) const {
  return goal.policy_compliant ? policy_compliant(goal.fluent, state, compliance) : state.holds(goal.fluent);
}

std::optional<std::vector<Waiver>> CompiledDomain::required_waivers(const State& state, ActionId action) const {
  std::vector<Waiver> out;
  for (const Waiver& d : degradations(state, ActionSet::of(action))) {
    switch (mode_.handling(d.kind)) {
      case Handling::Require:
        return std::nullopt;
      case Handling::Prefer:
        out.push_back(d);
        break;
      case Handling::Disregard:
        break;
    }
  }
  return out;
}

}  // namespace apia
