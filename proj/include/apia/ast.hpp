#pragma once

// Source-level syntax trees for the three input file kinds (.dom, .pol, .scn).
// These keep variables and declarations exactly as written; grounding turns
// them into the ground structures in domain.hpp and policy.hpp.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apia/diagnostics.hpp"

namespace apia {

enum class FluentKind { Inertial, Defined };
enum class ActionClass { Physical, Mental, Policy };
enum class Actor { Agent, Exogenous };
enum class Modality { Permitted, NotPermitted, Obl, NotObl };

namespace ast {

struct Term {
  std::string name;
  std::vector<Term> args;
  bool variable = false;
  SourceLoc loc;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Literal {
  bool negated = false;
  Term atom;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class CompareOp { Eq, Ne };

struct Comparison {
  Term lhs;
  CompareOp op = CompareOp::Ne;
  Term rhs;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

using CondItem = std::variant<Literal, Comparison>;

struct SortDecl {
  std::string name;
  std::vector<std::string> members;
  SourceLoc loc;
  friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

struct FluentDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  FluentKind kind = FluentKind::Inertial;
  SourceLoc loc;
  friend bool operator==(const FluentDecl&, const FluentDecl&) = default;
};

struct StaticDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  SourceLoc loc;
  friend bool operator==(const StaticDecl&, const StaticDecl&) = default;
};

struct StaticFact {
  Term atom;
  SourceLoc loc;
  friend bool operator==(const StaticFact&, const StaticFact&) = default;
};

struct ActionDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::optional<ActionClass> action_class;
  std::optional<Actor> actor;
  SourceLoc loc;
  friend bool operator==(const ActionDecl&, const ActionDecl&) = default;
};

enum class LawKind { DynamicCausal, StateConstraint, Executability };

struct Law {
  LawKind kind = LawKind::DynamicCausal;
  Term trigger;  // dynamic-causal and executability laws
  Literal head;  // dynamic-causal and state-constraint laws
  std::vector<CondItem> condition;
  SourceLoc loc;
  friend bool operator==(const Law&, const Law&) = default;
};

struct Goal {
  bool policy_compliant = false;
  Literal literal;
  friend bool operator==(const Goal&, const Goal&) = default;
};

struct Component {
  Term action;
  std::vector<Term> waivers;
  friend bool operator==(const Component&, const Component&) = default;
};

struct Activity {
  int id = 0;
  Goal goal;
  std::vector<Component> components;
  SourceLoc loc;
  friend bool operator==(const Activity&, const Activity&) = default;
};

struct Domain {
  std::vector<SortDecl> sorts;
  std::vector<FluentDecl> fluents;
  std::vector<StaticDecl> statics;
  std::vector<StaticFact> facts;
  std::vector<ActionDecl> actions;
  std::vector<Law> laws;
  std::vector<Activity> activities;
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct PolicyRule {
  std::optional<Term> label;
  bool defeasible = false;
  Modality modality = Modality::Permitted;
  Literal subject;  // negated only for obl(-a) / -obl(-a)
  std::vector<CondItem> condition;
  SourceLoc loc;
  friend bool operator==(const PolicyRule&, const PolicyRule&) = default;
};

struct Prefer {
  Term preferred;
  Term defeated;
  SourceLoc loc;
  friend bool operator==(const Prefer&, const Prefer&) = default;
};

struct Policy {
  std::vector<PolicyRule> rules;
  std::vector<Prefer> prefers;
  friend bool operator==(const Policy&, const Policy&) = default;
};

std::string to_string(const Term& term);
std::string to_string(const Literal& literal);
std::string to_string(const CondItem& item);
std::string to_string(const Goal& goal);
std::string to_string(const Law& law);
std::string to_string(const PolicyRule& rule);

// Pretty-printers whose output re-parses to a structurally equal tree.
std::string print(const Domain& domain);
std::string print(const Policy& policy);

}  // namespace ast
}  // namespace apia
