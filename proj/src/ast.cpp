#include "apia/ast.hpp"

#include <sstream>

namespace apia::ast {
namespace {

std::string join_sorts(const std::string& name, const std::vector<std::string>& sorts) {
  std::string out = name;
  if (!sorts.empty()) {
    out += '(';
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      if (i > 0) out += ", ";
      out += sorts[i];
    }
    out += ')';
  }
  return out;
}

std::string condition_suffix(const std::vector<CondItem>& condition) {
  if (condition.empty()) return "";
  std::string out = " if ";
  for (std::size_t i = 0; i < condition.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(condition[i]);
  }
  return out;
}

const char* modality_keyword(Modality m) {
  switch (m) {
    case Modality::Permitted: return "permitted";
    case Modality::NotPermitted: return "-permitted";
    case Modality::Obl: return "obl";
    case Modality::NotObl: return "-obl";
  }
  return "";
}

}  // namespace

std::string to_string(const Term& term) {
  std::string out = term.name;
  if (!term.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < term.args.size(); ++i) {
      if (i > 0) out += ", ";
      out += to_string(term.args[i]);
    }
    out += ')';
  }
  return out;
}

std::string to_string(const Literal& literal) {
  return (literal.negated ? "-" : "") + to_string(literal.atom);
}

std::string to_string(const CondItem& item) {
  if (const auto* lit = std::get_if<Literal>(&item)) return to_string(*lit);
  const auto& cmp = std::get<Comparison>(item);
  return to_string(cmp.lhs) + (cmp.op == CompareOp::Eq ? " = " : " != ") + to_string(cmp.rhs);
}

std::string to_string(const Goal& goal) {
  if (goal.policy_compliant) return "policy_compliant(" + to_string(goal.literal) + ")";
  return to_string(goal.literal);
}

std::string to_string(const Law& law) {
  switch (law.kind) {
    case LawKind::DynamicCausal:
      return to_string(law.trigger) + " causes " + to_string(law.head) + condition_suffix(law.condition);
    case LawKind::StateConstraint:
      return to_string(law.head) + condition_suffix(law.condition);
    case LawKind::Executability:
      return "impossible " + to_string(law.trigger) + condition_suffix(law.condition);
  }
  return "";
}

std::string to_string(const PolicyRule& rule) {
  std::string out;
  if (rule.label) out += to_string(*rule.label) + ": ";
  if (rule.defeasible) out += "normally ";
  out += modality_keyword(rule.modality);
  out += '(';
  if (rule.subject.negated) out += "neg(";
  out += to_string(rule.subject.atom);
  if (rule.subject.negated) out += ')';
  out += ')';
  out += condition_suffix(rule.condition);
  return out;
}

std::string print(const Domain& domain) {
  std::ostringstream out;
  for (const auto& s : domain.sorts) {
    out << "sort " << s.name << " = ";
    for (std::size_t i = 0; i < s.members.size(); ++i) out << (i > 0 ? ", " : "") << s.members[i];
    out << '\n';
  }
  for (const auto& f : domain.fluents) {
    out << (f.kind == FluentKind::Inertial ? "inertial" : "defined") << " fluent " << join_sorts(f.name, f.arg_sorts)
        << '\n';
  }
  for (const auto& s : domain.statics) out << "static " << join_sorts(s.name, s.arg_sorts) << '\n';
  for (const auto& f : domain.facts) out << "fact " << to_string(f.atom) << '\n';
  for (const auto& a : domain.actions) {
    out << "action " << join_sorts(a.name, a.arg_sorts);
    if (a.action_class) {
      switch (*a.action_class) {
        case ActionClass::Physical: out << " physical"; break;
        case ActionClass::Mental: out << " mental"; break;
        case ActionClass::Policy: out << " policy"; break;
      }
    }
    if (a.actor) out << (*a.actor == Actor::Agent ? " agent" : " exogenous");
    out << '\n';
  }
  for (const auto& law : domain.laws) out << to_string(law) << '\n';
  for (const auto& act : domain.activities) {
    out << "activity " << act.id << " goal " << to_string(act.goal) << " :";
    for (std::size_t i = 0; i < act.components.size(); ++i) {
      out << (i > 0 ? ";" : "") << ' ' << to_string(act.components[i].action);
      for (const auto& w : act.components[i].waivers) out << " + " << to_string(w);
    }
    out << '\n';
  }
  return out.str();
}

std::string print(const Policy& policy) {
  std::ostringstream out;
  for (const auto& rule : policy.rules) out << to_string(rule) << '\n';
  for (const auto& p : policy.prefers) {
    out << "prefer(" << to_string(p.preferred) << ", " << to_string(p.defeated) << ")\n";
  }
  return out.str();
}

}  // namespace apia::ast
