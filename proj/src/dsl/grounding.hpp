#pragma once

// Ground instantiation of rules with variables over declared sorts. Static
// literals and comparisons are decided during enumeration, so the bindings
// handed to callers already satisfy them.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "apia/ast.hpp"
#include "apia/domain.hpp"

namespace apia::dsl {

using Binding = std::map<std::string, std::string, std::less<>>;

std::string ground_name(const ast::Term& term, const Binding& binding);

class RuleGrounder {
 public:
  explicit RuleGrounder(const Domain& domain) : domain_(domain) {}

  // `atoms` are the rule's head/trigger/subject atoms, `condition` its body and
  // `dependent` terms (labels) whose variables must be bound elsewhere.
  // Returns false after appending diagnostics on a typing error.
  bool prepare(const std::vector<const ast::Term*>& atoms, const std::vector<ast::CondItem>& condition,
               const std::vector<const ast::Term*>& dependent, SourceLoc loc, std::vector<Diagnostic>& diagnostics);

  void for_each(const std::function<void(const Binding&)>& visit) const;

 private:
  struct Check {
    std::size_t ready_at = 0;  // index of the last variable it needs
    const ast::CondItem* item = nullptr;
  };

  bool type_atom(const ast::Term& atom, SourceLoc loc, std::vector<Diagnostic>& diagnostics);
  void note_variable(const std::string& name);
  bool holds(const Check& check, const Binding& binding) const;
  void enumerate(std::size_t depth, Binding& binding, const std::function<void(const Binding&)>& visit) const;

  const Domain& domain_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::string>, std::less<>> domains_;
  std::map<std::string, bool, std::less<>> typed_;
  std::vector<Check> checks_;
  std::vector<std::vector<std::size_t>> checks_at_;
  std::vector<std::size_t> ground_checks_;
};

}  // namespace apia::dsl
