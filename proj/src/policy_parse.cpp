#include <algorithm>

#include "apia/policy.hpp"
#include "dsl/grounding.hpp"
#include "dsl/lexer.hpp"

namespace apia {
namespace {

using dsl::Cursor;
using dsl::Tok;

bool is_modality_start(const Cursor& in) {
  return in.peek_word("permitted") || in.peek_word("obl") || in.peek_word("normally") ||
         in.peek().kind == Tok::Minus;
}

void parse_statement(Cursor& in, ast::Policy& out) {
  const SourceLoc loc = in.peek().loc;
  if (in.peek_word("prefer") && in.peek(1).kind == Tok::LParen) {
    in.next();
    in.next();
    ast::Prefer p;
    p.loc = loc;
    p.preferred = dsl::parse_term(in);
    in.expect(Tok::Comma, "','");
    p.defeated = dsl::parse_term(in);
    in.expect(Tok::RParen, "')'");
    in.expect_end();
    out.prefers.push_back(std::move(p));
    return;
  }
  ast::PolicyRule rule;
  rule.loc = loc;
  if (!is_modality_start(in)) {
    rule.label = dsl::parse_term(in);
    in.expect(Tok::Colon, "':' after the rule label");
  }
  rule.defeasible = in.accept_word("normally");
  const bool negated = in.accept(Tok::Minus);
  if (in.accept_word("permitted")) {
    rule.modality = negated ? Modality::NotPermitted : Modality::Permitted;
  } else if (in.accept_word("obl")) {
    rule.modality = negated ? Modality::NotObl : Modality::Obl;
  } else {
    in.fail("expected 'permitted' or 'obl'");
  }
  in.expect(Tok::LParen, "'('");
  if (in.accept(Tok::Minus)) {
    rule.subject.negated = true;
    rule.subject.atom = dsl::parse_term(in);
  } else if (in.peek_word("neg") && in.peek(1).kind == Tok::LParen) {
    in.next();
    in.next();
    rule.subject.negated = true;
    rule.subject.atom = dsl::parse_term(in);
    in.expect(Tok::RParen, "')'");
  } else {
    rule.subject.atom = dsl::parse_term(in);
  }
  in.expect(Tok::RParen, "')'");
  if (in.accept_word("if")) rule.condition = dsl::parse_condition(in);
  in.expect_end();
  out.rules.push_back(std::move(rule));
}

// Binds the variables of `pattern` against ground `term`; false on mismatch.
bool unify(const ast::Term& pattern, const ast::Term& term, dsl::Binding& binding) {
  if (pattern.variable) {
    auto [it, fresh] = binding.try_emplace(pattern.name, dsl::ground_name(term, {}));
    return fresh || it->second == dsl::ground_name(term, {});
  }
  if (pattern.name != term.name || pattern.args.size() != term.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!unify(pattern.args[i], term.args[i], binding)) return false;
  }
  return true;
}

ast::Term substitute(const ast::Term& term, const dsl::Binding& binding) {
  if (term.variable) {
    ast::Term t;
    t.name = binding.find(term.name)->second;
    return t;
  }
  ast::Term t;
  t.name = term.name;
  for (const auto& a : term.args) t.args.push_back(substitute(a, binding));
  return t;
}

}  // namespace

class PolicyBuilder {
 public:
  PolicyBuilder(const Domain& domain, std::vector<Diagnostic>& diagnostics) : domain_(domain), diags_(diagnostics) {}

  Policy build(ast::Policy syntax) {
    p_.syntax_ = std::move(syntax);
    p_.by_action_.assign(domain_.action_count(), {});
    p_.prefers_by_action_.assign(domain_.action_count(), {});
    ground_rules();
    ground_prefers();
    index();
    return std::move(p_);
  }

 private:
  void error(SourceLoc loc, std::string message) { diags_.push_back({loc, Severity::Error, std::move(message)}); }

  bool check_subject(const ast::PolicyRule& rule) {
    const ast::Term& subject = rule.subject.atom;
    const Signature* sig = domain_.signature(subject.name);
    if (sig == nullptr || sig->category != PredicateCategory::Action) {
      if (subject.name == "start" || subject.name == "stop" || subject.name == "wait") {
        error(rule.loc, "policy statement over mental action '" + subject.name +
                            "': only physical agent actions can be policy subjects");
      } else {
        error(rule.loc, "policy statement describes an object that is not declared as an action: '" +
                            ast::to_string(subject) + "'");
      }
      return false;
    }
    if (sig->actor != Actor::Agent) {
      error(rule.loc, "policy statement describes exogenous action '" + subject.name +
                          "'; policies may only describe the agent's own actions");
      return false;
    }
    if (rule.subject.negated &&
        (rule.modality == Modality::Permitted || rule.modality == Modality::NotPermitted)) {
      error(rule.loc, "permitted takes an action, not a negated action");
      return false;
    }
    return true;
  }

  void ground_rules() {
    dsl::RuleGrounder grounder(domain_);
    std::map<std::string, SourceLoc> label_functors;
    for (const auto& rule : p_.syntax_.rules) {
      const std::string text = ast::to_string(rule);
      if (rule.defeasible && !rule.label) {
        error(rule.loc, "defeasible rule '" + text + "' needs a label");
        continue;
      }
      if (!rule.defeasible && rule.label) {
        error(rule.loc, "strict rule '" + text + "' cannot carry a label; only 'normally' rules are labelled");
        continue;
      }
      if (rule.label) {
        if (rule.label->variable) {
          error(rule.loc, "a rule label must start with a lowercase name");
          continue;
        }
        if (!label_functors.emplace(rule.label->name, rule.loc).second) {
          error(rule.loc, "label '" + rule.label->name + "' is used by more than one rule");
          continue;
        }
        functor_patterns_[rule.label->name] = *rule.label;
      }
      if (!check_subject(rule)) continue;
      std::vector<const ast::Term*> dependent;
      if (rule.label) dependent.push_back(&*rule.label);
      if (!grounder.prepare({&rule.subject.atom}, rule.condition, dependent, rule.loc, diags_)) continue;
      grounder.for_each([&](const dsl::Binding& b) {
        PolicyRule g;
        g.defeasible = rule.defeasible;
        g.modality = rule.modality;
        g.refrain = rule.subject.negated;
        g.subject = *domain_.find_action(dsl::ground_name(rule.subject.atom, b));
        g.text = text;
        g.loc = rule.loc;
        if (rule.label) {
          g.label = dsl::ground_name(*rule.label, b);
          ground_labels_[rule.label->name].insert(substitute(*rule.label, b));
        }
        for (const auto& item : rule.condition) {
          const auto* lit = std::get_if<ast::Literal>(&item);
          if (lit == nullptr) continue;
          const Signature* sig = domain_.signature(lit->atom.name);
          if (sig->category == PredicateCategory::Static) continue;
          const std::string name = dsl::ground_name(lit->atom, b);
          if (sig->category == PredicateCategory::Fluent) {
            g.condition.push_back({CondLiteral::Kind::Fluent, *domain_.find_fluent(name), !lit->negated});
          } else {
            g.condition.push_back({CondLiteral::Kind::Action, *domain_.find_action(name), !lit->negated});
            p_.mentions_actions_ = true;
          }
        }
        std::sort(g.condition.begin(), g.condition.end());
        g.condition.erase(std::unique(g.condition.begin(), g.condition.end()), g.condition.end());
        p_.rules_.push_back(std::move(g));
      });
    }
  }

  void ground_prefers() {
    std::set<PreferEdge> edges;
    for (const auto& pref : p_.syntax_.prefers) {
      bool ok = true;
      for (const ast::Term* t : {&pref.preferred, &pref.defeated}) {
        if (t->variable || !functor_patterns_.count(t->name)) {
          error(pref.loc, "prefer references unknown label '" + ast::to_string(*t) + "'");
          ok = false;
        }
      }
      if (!ok) continue;
      const auto& firsts = ground_labels_[pref.preferred.name];
      const auto& seconds = ground_labels_[pref.defeated.name];
      for (const auto& g1 : firsts) {
        dsl::Binding b1;
        if (!unify(pref.preferred, g1, b1)) continue;
        for (const auto& g2 : seconds) {
          dsl::Binding b2 = b1;
          if (!unify(pref.defeated, g2, b2)) continue;
          edges.insert({dsl::ground_name(g1, {}), dsl::ground_name(g2, {})});
        }
      }
    }
    p_.prefers_.assign(edges.begin(), edges.end());
  }

  void index() {
    std::set<ActionId> obligations;
    for (std::size_t i = 0; i < p_.rules_.size(); ++i) {
      const PolicyRule& r = p_.rules_[i];
      p_.by_action_[r.subject].push_back(i);
      if (!r.label.empty()) p_.by_label_[r.label].push_back(i);
      if (r.modality == Modality::Obl || r.modality == Modality::NotObl) obligations.insert(r.subject);
    }
    for (std::size_t e = 0; e < p_.prefers_.size(); ++e) {
      std::set<ActionId> subjects;
      for (std::size_t i : p_.by_label_[p_.prefers_[e].defeated]) subjects.insert(p_.rules_[i].subject);
      for (ActionId a : subjects) p_.prefers_by_action_[a].push_back(e);
    }
    p_.obligation_subjects_.assign(obligations.begin(), obligations.end());
    std::sort(p_.obligation_subjects_.begin(), p_.obligation_subjects_.end(),
              [&](ActionId x, ActionId y) { return domain_.action_rank(x) < domain_.action_rank(y); });
  }

  struct TermLess {
    bool operator()(const ast::Term& a, const ast::Term& b) const {
      return dsl::ground_name(a, {}) < dsl::ground_name(b, {});
    }
  };

  const Domain& domain_;
  std::vector<Diagnostic>& diags_;
  Policy p_;
  std::map<std::string, ast::Term> functor_patterns_;
  std::map<std::string, std::set<ast::Term, TermLess>> ground_labels_;
};

const std::vector<std::size_t>& Policy::rules_labelled(const std::string& label) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_label_.find(label);
  return it == by_label_.end() ? kNone : it->second;
}

Policy Policy::empty_for(const Domain& domain) {
  Policy p;
  p.by_action_.assign(domain.action_count(), {});
  p.prefers_by_action_.assign(domain.action_count(), {});
  return p;
}

ParseResult<Policy> parse_policy(std::string_view text, const Domain& domain) {
  ParseResult<Policy> result;
  ast::Policy syntax;
  for (const auto& statement : dsl::split_statements(text, result.diagnostics)) {
    Cursor in(statement);
    try {
      parse_statement(in, syntax);
    } catch (const dsl::SyntaxError& e) {
      result.diagnostics.push_back({e.loc, Severity::Error, e.message});
    }
  }
  PolicyBuilder builder(domain, result.diagnostics);
  Policy policy = builder.build(std::move(syntax));
  if (!has_errors(result.diagnostics)) result.value = std::move(policy);
  return result;
}

Policy parse_policy_or_throw(std::string_view text, const Domain& domain) {
  auto result = parse_policy(text, domain);
  if (!result.ok()) {
    throw ParseError("policy has errors:\n" + format_diagnostics(result.diagnostics, "<policy>"),
                     result.diagnostics);
  }
  return std::move(*result.value);
}

}  // namespace apia
