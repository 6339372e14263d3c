#include "dsl/grounding.hpp"

#include <algorithm>

namespace apia::dsl {
namespace {

void collect_variables(const ast::Term& term, std::vector<std::string>& out) {
  if (term.variable) {
    out.push_back(term.name);
    return;
  }
  for (const auto& arg : term.args) collect_variables(arg, out);
}

std::string resolve(const ast::Term& term, const Binding& binding) {
  if (!term.variable) return term.name;
  return binding.find(term.name)->second;
}

}  // namespace

std::string ground_name(const ast::Term& term, const Binding& binding) {
  if (term.variable) {
    auto it = binding.find(term.name);
    return it == binding.end() ? term.name : it->second;
  }
  std::string out = term.name;
  if (!term.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < term.args.size(); ++i) {
      if (i > 0) out += ',';
      out += ground_name(term.args[i], binding);
    }
    out += ')';
  }
  return out;
}

void RuleGrounder::note_variable(const std::string& name) {
  if (std::find(order_.begin(), order_.end(), name) == order_.end()) order_.push_back(name);
}

bool RuleGrounder::type_atom(const ast::Term& atom, SourceLoc loc, std::vector<Diagnostic>& diagnostics) {
  const Signature* sig = domain_.signature(atom.name);
  if (sig == nullptr) {
    diagnostics.push_back({atom.loc.line ? atom.loc : loc, Severity::Error,
                           "undeclared fluent, static or action '" + atom.name + "'"});
    return false;
  }
  if (sig->arg_sorts.size() != atom.args.size()) {
    diagnostics.push_back({atom.loc, Severity::Error,
                           "'" + atom.name + "' expects " + std::to_string(sig->arg_sorts.size()) + " argument(s), got " +
                               std::to_string(atom.args.size())});
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const ast::Term& arg = atom.args[i];
    const std::vector<std::string>* members = domain_.sort_members(sig->arg_sorts[i]);
    if (members == nullptr) {
      diagnostics.push_back({arg.loc, Severity::Error, "undeclared sort '" + sig->arg_sorts[i] + "'"});
      ok = false;
      continue;
    }
    if (!arg.args.empty()) {
      diagnostics.push_back({arg.loc, Severity::Error, "nested term '" + ast::to_string(arg) + "' is not an object"});
      ok = false;
      continue;
    }
    if (arg.variable) {
      note_variable(arg.name);
      auto [it, fresh] = domains_.try_emplace(arg.name, *members);
      if (!fresh) {
        std::erase_if(it->second, [&](const std::string& m) {
          return std::find(members->begin(), members->end(), m) == members->end();
        });
      }
      typed_[arg.name] = true;
    } else if (std::find(members->begin(), members->end(), arg.name) == members->end()) {
      diagnostics.push_back({arg.loc, Severity::Error,
                             "'" + arg.name + "' is not an object of sort '" + sig->arg_sorts[i] + "'"});
      ok = false;
    }
  }
  return ok;
}

bool RuleGrounder::prepare(const std::vector<const ast::Term*>& atoms, const std::vector<ast::CondItem>& condition,
                           const std::vector<const ast::Term*>& dependent, SourceLoc loc,
                           std::vector<Diagnostic>& diagnostics) {
  order_.clear();
  domains_.clear();
  typed_.clear();
  checks_.clear();
  ground_checks_.clear();
  bool ok = true;
  for (const ast::Term* atom : atoms) ok = type_atom(*atom, loc, diagnostics) && ok;
  std::vector<const ast::CondItem*> pending;
  for (const auto& item : condition) {
    if (const auto* lit = std::get_if<ast::Literal>(&item)) {
      if (!type_atom(lit->atom, loc, diagnostics)) {
        ok = false;
        continue;
      }
      if (domain_.signature(lit->atom.name)->category == PredicateCategory::Static) pending.push_back(&item);
    } else {
      pending.push_back(&item);
    }
  }
  auto require_bound = [&](const ast::Term& term, const char* where) {
    std::vector<std::string> vars;
    collect_variables(term, vars);
    for (const auto& v : vars) {
      if (!typed_.count(v)) {
        diagnostics.push_back({term.loc.line ? term.loc : loc, Severity::Error,
                               "variable " + v + " in " + where + " does not occur in any typed atom"});
        ok = false;
      }
    }
  };
  for (const ast::Term* term : dependent) require_bound(*term, "label");
  for (const ast::CondItem* item : pending) {
    if (const auto* cmp = std::get_if<ast::Comparison>(item)) {
      require_bound(cmp->lhs, "comparison");
      require_bound(cmp->rhs, "comparison");
    }
  }
  if (!ok) return false;

  checks_at_.assign(order_.size(), {});
  for (const ast::CondItem* item : pending) {
    std::vector<std::string> vars;
    if (const auto* lit = std::get_if<ast::Literal>(item)) {
      collect_variables(lit->atom, vars);
    } else {
      const auto& cmp = std::get<ast::Comparison>(*item);
      collect_variables(cmp.lhs, vars);
      collect_variables(cmp.rhs, vars);
    }
    Check check{0, item};
    if (vars.empty()) {
      ground_checks_.push_back(checks_.size());
    } else {
      for (const auto& v : vars) {
        const auto idx = static_cast<std::size_t>(std::find(order_.begin(), order_.end(), v) - order_.begin());
        check.ready_at = std::max(check.ready_at, idx);
      }
      checks_at_[check.ready_at].push_back(checks_.size());
    }
    checks_.push_back(check);
  }
  return true;
}

bool RuleGrounder::holds(const Check& check, const Binding& binding) const {
  if (const auto* lit = std::get_if<ast::Literal>(check.item)) {
    return domain_.static_holds(ground_name(lit->atom, binding)) != lit->negated;
  }
  const auto& cmp = std::get<ast::Comparison>(*check.item);
  const bool equal = resolve(cmp.lhs, binding) == resolve(cmp.rhs, binding);
  return cmp.op == ast::CompareOp::Eq ? equal : !equal;
}

void RuleGrounder::enumerate(std::size_t depth, Binding& binding,
                             const std::function<void(const Binding&)>& visit) const {
  if (depth == order_.size()) {
    visit(binding);
    return;
  }
  const std::string& var = order_[depth];
  for (const auto& value : domains_.find(var)->second) {
    binding[var] = value;
    bool pass = true;
    for (std::size_t c : checks_at_[depth]) {
      if (!holds(checks_[c], binding)) {
        pass = false;
        break;
      }
    }
    if (pass) enumerate(depth + 1, binding, visit);
  }
  binding.erase(var);
}

void RuleGrounder::for_each(const std::function<void(const Binding&)>& visit) const {
  Binding binding;
  for (std::size_t c : ground_checks_) {
    if (!holds(checks_[c], binding)) return;
  }
  enumerate(0, binding, visit);
}

}  // namespace apia::dsl
