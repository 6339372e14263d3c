#include "apia/domain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dsl/grounding.hpp"
#include "dsl/lexer.hpp"

namespace apia {
namespace {

using dsl::Cursor;
using dsl::Tok;

constexpr std::string_view kBuiltinActions[] = {
    "wait",   "start",          "stop",          "select", "select_goal", "abandon", "ignore_not_permitted",
    "ignore_neg_permitted", "ignore_obl", "policy_compliant", "neg"};

void parse_statement(Cursor& in, ast::Domain& out) {
  const SourceLoc loc = in.peek().loc;
  if (in.accept_word("sort")) {
    ast::SortDecl decl;
    decl.loc = loc;
    decl.name = in.expect(Tok::Ident, "a sort name").text;
    in.expect(Tok::Eq, "'='");
    decl.members = dsl::parse_name_list(in);
    in.expect_end();
    out.sorts.push_back(std::move(decl));
    return;
  }
  if (in.peek_word("inertial") || in.peek_word("defined")) {
    ast::FluentDecl decl;
    decl.loc = loc;
    decl.kind = in.next().text == "inertial" ? FluentKind::Inertial : FluentKind::Defined;
    in.expect_word("fluent");
    decl.name = dsl::parse_signature(in, decl.arg_sorts);
    in.expect_end();
    out.fluents.push_back(std::move(decl));
    return;
  }
  if (in.peek_word("fluent") && in.peek(1).kind == Tok::Ident) {
    in.fail("fluent declarations must say 'inertial fluent' or 'defined fluent'");
  }
  if (in.peek_word("static") && in.peek(1).kind == Tok::Ident) {
    in.next();
    ast::StaticDecl decl;
    decl.loc = loc;
    decl.name = dsl::parse_signature(in, decl.arg_sorts);
    in.expect_end();
    out.statics.push_back(std::move(decl));
    return;
  }
  if (in.peek_word("fact") && in.peek(1).kind == Tok::Ident) {
    in.next();
    ast::StaticFact fact;
    fact.loc = loc;
    fact.atom = dsl::parse_term(in);
    in.expect_end();
    out.facts.push_back(std::move(fact));
    return;
  }
  if (in.peek_word("action") && in.peek(1).kind == Tok::Ident) {
    in.next();
    ast::ActionDecl decl;
    decl.loc = loc;
    decl.name = dsl::parse_signature(in, decl.arg_sorts);
    while (!in.at_end()) {
      const std::string word = in.expect(Tok::Ident, "an action class or actor").text;
      if (word == "physical") {
        decl.action_class = ActionClass::Physical;
      } else if (word == "mental") {
        decl.action_class = ActionClass::Mental;
      } else if (word == "policy") {
        decl.action_class = ActionClass::Policy;
      } else if (word == "agent") {
        decl.actor = Actor::Agent;
      } else if (word == "exogenous") {
        decl.actor = Actor::Exogenous;
      } else {
        throw dsl::SyntaxError{loc, "unknown action attribute '" + word + "'"};
      }
    }
    out.actions.push_back(std::move(decl));
    return;
  }
  if (in.peek_word("impossible") && in.peek(1).kind == Tok::Ident) {
    in.next();
    ast::Law law;
    law.loc = loc;
    law.kind = ast::LawKind::Executability;
    law.trigger = dsl::parse_term(in);
    if (in.accept_word("if")) law.condition = dsl::parse_condition(in);
    in.expect_end();
    out.laws.push_back(std::move(law));
    return;
  }
  if (in.peek_word("activity") && in.peek(1).kind == Tok::Number) {
    in.next();
    ast::Activity act;
    act.loc = loc;
    act.id = std::stoi(in.next().text);
    in.expect_word("goal");
    act.goal = dsl::parse_goal(in);
    in.expect(Tok::Colon, "':' before the activity components");
    do {
      ast::Component component;
      component.action = dsl::parse_term(in);
      while (in.accept(Tok::Plus)) component.waivers.push_back(dsl::parse_term(in));
      act.components.push_back(std::move(component));
    } while (in.accept(Tok::Semicolon));
    in.expect_end();
    out.activities.push_back(std::move(act));
    return;
  }
  ast::Literal first = dsl::parse_literal(in);
  ast::Law law;
  law.loc = loc;
  if (in.accept_word("causes")) {
    if (first.negated) throw dsl::SyntaxError{loc, "the trigger of a causal law must be an action, not a literal"};
    law.kind = ast::LawKind::DynamicCausal;
    law.trigger = std::move(first.atom);
    law.head = dsl::parse_literal(in);
  } else {
    law.kind = ast::LawKind::StateConstraint;
    law.head = std::move(first);
  }
  if (in.accept_word("if")) law.condition = dsl::parse_condition(in);
  in.expect_end();
  out.laws.push_back(std::move(law));
}

// Cartesian product of sort members, yielding ground atom names.
void expand(const std::string& name, const std::vector<const std::vector<std::string>*>& sorts,
            std::vector<std::string>& out) {
  std::vector<std::size_t> idx(sorts.size(), 0);
  for (const auto* s : sorts) {
    if (s->empty()) return;
  }
  while (true) {
    std::string atom = name;
    if (!sorts.empty()) {
      atom += '(';
      for (std::size_t i = 0; i < sorts.size(); ++i) {
        if (i > 0) atom += ',';
        atom += (*sorts[i])[idx[i]];
      }
      atom += ')';
    }
    out.push_back(std::move(atom));
    std::size_t k = sorts.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sorts[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (sorts.empty()) return;
  }
}

}  // namespace

bool is_builtin_action_name(std::string_view name) {
  return std::find(std::begin(kBuiltinActions), std::end(kBuiltinActions), name) != std::end(kBuiltinActions);
}

class DomainBuilder {
 public:
  explicit DomainBuilder(std::vector<Diagnostic>& diagnostics) : diags_(diagnostics) {}

  Domain build(ast::Domain syntax) {
    d_.syntax_ = std::move(syntax);
    declare_sorts();
    declare_predicates();
    add_facts();
    ground_atoms();
    ground_laws();
    stratify();
    build_activities();
    return std::move(d_);
  }

 private:
  void error(SourceLoc loc, std::string message) { diags_.push_back({loc, Severity::Error, std::move(message)}); }

  void declare_sorts() {
    for (const auto& s : d_.syntax_.sorts) {
      if (d_.sorts_.count(s.name)) {
        error(s.loc, "sort '" + s.name + "' declared twice");
        continue;
      }
      std::vector<std::string> members;
      for (const auto& m : s.members) {
        if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
      }
      d_.sorts_.emplace(s.name, std::move(members));
    }
  }

  bool check_sorts(const std::vector<std::string>& sorts, SourceLoc loc) {
    bool ok = true;
    for (const auto& s : sorts) {
      if (!d_.sorts_.count(s)) {
        error(loc, "undeclared sort '" + s + "'");
        ok = false;
      }
    }
    return ok;
  }

  bool claim_name(const std::string& name, SourceLoc loc) {
    if (is_builtin_action_name(name)) {
      error(loc, "'" + name + "' is a built-in name and cannot be declared");
      return false;
    }
    if (d_.signatures_.count(name)) {
      error(loc, "'" + name + "' is declared more than once (a ground atom cannot be both a fluent and an action)");
      return false;
    }
    return true;
  }

  void declare_predicates() {
    for (const auto& f : d_.syntax_.fluents) {
      if (!claim_name(f.name, f.loc) || !check_sorts(f.arg_sorts, f.loc)) continue;
      Signature sig;
      sig.category = PredicateCategory::Fluent;
      sig.arg_sorts = f.arg_sorts;
      sig.fluent_kind = f.kind;
      d_.signatures_.emplace(f.name, std::move(sig));
    }
    for (const auto& s : d_.syntax_.statics) {
      if (!claim_name(s.name, s.loc) || !check_sorts(s.arg_sorts, s.loc)) continue;
      Signature sig;
      sig.category = PredicateCategory::Static;
      sig.arg_sorts = s.arg_sorts;
      d_.signatures_.emplace(s.name, std::move(sig));
    }
    for (const auto& a : d_.syntax_.actions) {
      bool ok = true;
      if (!a.action_class) {
        error(a.loc, "action '" + a.name + "' is neither a physical, mental, nor policy action");
        ok = false;
      } else if (*a.action_class != ActionClass::Physical) {
        error(a.loc, "action '" + a.name + "': mental and policy actions are built in and cannot be declared");
        ok = false;
      }
      if (!a.actor) {
        error(a.loc, "action '" + a.name + "' is neither an agent nor an exogenous action");
        ok = false;
      }
      if (!claim_name(a.name, a.loc) || !check_sorts(a.arg_sorts, a.loc) || !ok) continue;
      Signature sig;
      sig.category = PredicateCategory::Action;
      sig.arg_sorts = a.arg_sorts;
      sig.actor = *a.actor;
      d_.signatures_.emplace(a.name, std::move(sig));
    }
  }

  void add_facts() {
    for (const auto& f : d_.syntax_.facts) {
      const Signature* sig = d_.signature(f.atom.name);
      if (sig == nullptr || sig->category != PredicateCategory::Static) {
        error(f.loc, "'" + f.atom.name + "' is not a declared static");
        continue;
      }
      if (sig->arg_sorts.size() != f.atom.args.size()) {
        error(f.loc, "'" + f.atom.name + "' expects " + std::to_string(sig->arg_sorts.size()) + " argument(s)");
        continue;
      }
      bool ok = true;
      for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
        const auto& arg = f.atom.args[i];
        const auto* members = d_.sort_members(sig->arg_sorts[i]);
        if (arg.variable || !arg.args.empty() || members == nullptr ||
            std::find(members->begin(), members->end(), arg.name) == members->end()) {
          error(arg.loc, "'" + ast::to_string(arg) + "' is not an object of sort '" + sig->arg_sorts[i] + "'");
          ok = false;
        }
      }
      if (ok) d_.statics_.insert(dsl::ground_name(f.atom, {}));
    }
  }

  std::vector<std::string> instances(const std::string& name, const std::vector<std::string>& arg_sorts) {
    std::vector<const std::vector<std::string>*> sorts;
    for (const auto& s : arg_sorts) sorts.push_back(d_.sort_members(s));
    std::vector<std::string> out;
    expand(name, sorts, out);
    return out;
  }

  void ground_atoms() {
    for (const auto& f : d_.syntax_.fluents) {
      const Signature* sig = d_.signature(f.name);
      if (sig == nullptr || sig->category != PredicateCategory::Fluent) continue;
      for (auto& atom : instances(f.name, f.arg_sorts)) {
        const auto id = static_cast<FluentId>(d_.fluents_.size());
        d_.fluent_index_.emplace(atom, id);
        (f.kind == FluentKind::Inertial ? d_.inertial_ : d_.defined_).push_back(id);
        d_.fluents_.push_back({std::move(atom), f.name, f.kind});
      }
    }
    for (const auto& a : d_.syntax_.actions) {
      const Signature* sig = d_.signature(a.name);
      if (sig == nullptr || sig->category != PredicateCategory::Action) continue;
      for (auto& atom : instances(a.name, a.arg_sorts)) {
        const auto id = static_cast<ActionId>(d_.actions_.size());
        d_.action_index_.emplace(atom, id);
        (sig->actor == Actor::Agent ? d_.agent_actions_ : d_.exogenous_actions_).push_back(id);
        d_.actions_.push_back({std::move(atom), a.name, sig->actor});
      }
    }
    std::vector<ActionId> by_name(d_.actions_.size());
    std::iota(by_name.begin(), by_name.end(), ActionId{0});
    std::sort(by_name.begin(), by_name.end(),
              [&](ActionId x, ActionId y) { return d_.actions_[x].name < d_.actions_[y].name; });
    d_.action_rank_.assign(d_.actions_.size(), 0);
    for (std::size_t i = 0; i < by_name.size(); ++i) d_.action_rank_[by_name[i]] = static_cast<int>(i);
    auto by_rank = [&](ActionId x, ActionId y) { return d_.action_rank_[x] < d_.action_rank_[y]; };
    std::sort(d_.agent_actions_.begin(), d_.agent_actions_.end(), by_rank);
    std::sort(d_.exogenous_actions_.begin(), d_.exogenous_actions_.end(), by_rank);
    d_.causal_by_action_.assign(d_.actions_.size(), {});
    d_.executability_by_action_.assign(d_.actions_.size(), {});
  }

  // Non-static condition literals become ground CondLiterals.
  bool ground_condition(const std::vector<ast::CondItem>& items, const dsl::Binding& binding, Condition& out) {
    for (const auto& item : items) {
      const auto* lit = std::get_if<ast::Literal>(&item);
      if (lit == nullptr) continue;
      const Signature* sig = d_.signature(lit->atom.name);
      if (sig->category == PredicateCategory::Static) continue;
      const std::string name = dsl::ground_name(lit->atom, binding);
      if (sig->category == PredicateCategory::Fluent) {
        out.push_back({CondLiteral::Kind::Fluent, *d_.find_fluent(name), !lit->negated});
      } else {
        out.push_back({CondLiteral::Kind::Action, *d_.find_action(name), !lit->negated});
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return true;
  }

  bool mentions_action(const std::vector<ast::CondItem>& items) const {
    return std::any_of(items.begin(), items.end(), [&](const ast::CondItem& item) {
      const auto* lit = std::get_if<ast::Literal>(&item);
      if (lit == nullptr) return false;
      const Signature* sig = d_.signature(lit->atom.name);
      return sig != nullptr && sig->category == PredicateCategory::Action;
    });
  }

  void ground_laws() {
    dsl::RuleGrounder grounder(d_);
    for (const auto& law : d_.syntax_.laws) {
      const std::string text = ast::to_string(law);
      std::vector<const ast::Term*> atoms;
      if (law.kind != ast::LawKind::StateConstraint) {
        const Signature* sig = d_.signature(law.trigger.name);
        if (sig == nullptr || sig->category != PredicateCategory::Action) {
          error(law.loc, "'" + law.trigger.name + "' in '" + text + "' is not a declared action");
          continue;
        }
        atoms.push_back(&law.trigger);
      }
      if (law.kind != ast::LawKind::Executability) {
        const Signature* sig = d_.signature(law.head.atom.name);
        if (sig == nullptr || sig->category != PredicateCategory::Fluent) {
          error(law.loc, "head '" + law.head.atom.name + "' of '" + text + "' is not a declared fluent");
          continue;
        }
        if (law.kind == ast::LawKind::DynamicCausal && sig->fluent_kind == FluentKind::Defined) {
          error(law.loc, "defined fluent '" + law.head.atom.name + "' cannot be a direct effect of an action");
          continue;
        }
        if (law.kind == ast::LawKind::StateConstraint) {
          if (sig->fluent_kind != FluentKind::Defined) {
            error(law.loc, "state constraints may only define defined fluents; '" + law.head.atom.name +
                               "' is inertial");
            continue;
          }
          if (law.head.negated) {
            error(law.loc, "defined fluents are closed-world; a state constraint head cannot be negated");
            continue;
          }
        }
        atoms.push_back(&law.head.atom);
      }
      if (law.kind == ast::LawKind::StateConstraint && mentions_action(law.condition)) {
        error(law.loc, "state constraints cannot mention actions: '" + text + "'");
        continue;
      }
      if (!grounder.prepare(atoms, law.condition, {}, law.loc, diags_)) continue;
      grounder.for_each([&](const dsl::Binding& b) {
        Condition cond;
        ground_condition(law.condition, b, cond);
        switch (law.kind) {
          case ast::LawKind::DynamicCausal: {
            CausalLaw g;
            g.trigger = *d_.find_action(dsl::ground_name(law.trigger, b));
            g.head = {*d_.find_fluent(dsl::ground_name(law.head.atom, b)), !law.head.negated};
            g.condition = std::move(cond);
            g.text = text;
            g.loc = law.loc;
            d_.causal_by_action_[g.trigger].push_back(d_.causal_.size());
            d_.causal_.push_back(std::move(g));
            break;
          }
          case ast::LawKind::Executability: {
            ExecutabilityLaw g;
            g.action = *d_.find_action(dsl::ground_name(law.trigger, b));
            g.condition = std::move(cond);
            g.text = text;
            g.loc = law.loc;
            d_.executability_by_action_[g.action].push_back(d_.executability_.size());
            d_.executability_.push_back(std::move(g));
            break;
          }
          case ast::LawKind::StateConstraint: {
            StateConstraint g;
            g.head = *d_.find_fluent(dsl::ground_name(law.head.atom, b));
            g.condition = std::move(cond);
            g.text = text;
            g.loc = law.loc;
            d_.constraints_.push_back(std::move(g));
            break;
          }
        }
      });
    }
  }

  // Predicate-level stratification of defined fluents.
  void stratify() {
    std::map<std::string, int> stratum;
    for (const auto& f : d_.syntax_.fluents) {
      if (f.kind == FluentKind::Defined) stratum[f.name] = 0;
    }
    struct Edge {
      std::string from, to;
      bool negative;
      SourceLoc loc;
    };
    std::vector<Edge> edges;
    for (const auto& law : d_.syntax_.laws) {
      if (law.kind != ast::LawKind::StateConstraint || !stratum.count(law.head.atom.name)) continue;
      for (const auto& item : law.condition) {
        const auto* lit = std::get_if<ast::Literal>(&item);
        if (lit != nullptr && stratum.count(lit->atom.name)) {
          edges.push_back({lit->atom.name, law.head.atom.name, lit->negated, law.loc});
        }
      }
    }
    const int limit = static_cast<int>(stratum.size());
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& e : edges) {
        const int need = stratum[e.from] + (e.negative ? 1 : 0);
        if (stratum[e.to] < need) {
          stratum[e.to] = need;
          changed = true;
          if (need > limit) {
            error(e.loc, "defined fluent '" + e.to + "' depends on itself through negation (unstratified)");
            return;
          }
        }
      }
    }
    int top = 0;
    for (auto& c : d_.constraints_) {
      c.stratum = stratum[d_.fluents_[c.head].predicate];
      top = std::max(top, c.stratum);
    }
    std::stable_sort(d_.constraints_.begin(), d_.constraints_.end(),
                     [](const StateConstraint& a, const StateConstraint& b) { return a.stratum < b.stratum; });
    d_.strata_ = d_.constraints_.empty() ? 0 : top + 1;
  }

  void build_activities() {
    std::set<ActivityId> seen;
    for (const auto& act : d_.syntax_.activities) {
      if (!seen.insert(act.id).second) {
        error(act.loc, "activity " + std::to_string(act.id) + " declared twice");
        continue;
      }
      std::string why;
      Activity out;
      out.id = act.id;
      auto goal = d_.resolve_goal(act.goal, &why);
      if (!goal) {
        error(act.loc, "activity " + std::to_string(act.id) + ": " + why);
        continue;
      }
      out.goal = *goal;
      bool ok = true;
      for (const auto& c : act.components) {
        const std::string name = dsl::ground_name(c.action, {});
        auto id = d_.find_action(name);
        if (!id || !d_.is_agent_action(*id)) {
          error(c.action.loc.line ? c.action.loc : act.loc,
                "activity component '" + name + "' is not a declared agent action");
          ok = false;
          continue;
        }
        Component comp{*id, {}};
        for (const auto& w : c.waivers) {
          auto waiver = d_.resolve_waiver(w, &why);
          if (!waiver) {
            error(w.loc.line ? w.loc : act.loc, why);
            ok = false;
            continue;
          }
          if (waiver->kind != WaiverKind::OblDo && waiver->action != *id) {
            error(w.loc.line ? w.loc : act.loc,
                  "waiver '" + d_.waiver_name(*waiver) + "' must accompany the action it waives");
            ok = false;
            continue;
          }
          comp.waivers.push_back(*waiver);
        }
        std::sort(comp.waivers.begin(), comp.waivers.end());
        out.components.push_back(std::move(comp));
      }
      if (act.components.empty()) {
        error(act.loc, "activity " + std::to_string(act.id) + " has no components");
        ok = false;
      }
      if (ok) d_.activities_.push_back(std::move(out));
    }
    std::sort(d_.activities_.begin(), d_.activities_.end(),
              [](const Activity& a, const Activity& b) { return a.id < b.id; });
  }

  std::vector<Diagnostic>& diags_;
  Domain d_;
};

std::optional<FluentId> Domain::find_fluent(std::string_view ground_name) const {
  auto it = fluent_index_.find(std::string(ground_name));
  if (it == fluent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> Domain::find_action(std::string_view ground_name) const {
  auto it = action_index_.find(std::string(ground_name));
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

const Signature* Domain::signature(std::string_view predicate) const {
  auto it = signatures_.find(predicate);
  return it == signatures_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* Domain::sort_members(std::string_view sort) const {
  auto it = sorts_.find(sort);
  return it == sorts_.end() ? nullptr : &it->second;
}

std::string Domain::literal_name(FluentLiteral literal) const {
  return (literal.positive ? "" : "-") + fluents_[literal.fluent].name;
}

std::string Domain::goal_name(const Goal& goal) const {
  if (goal.policy_compliant) return "policy_compliant(" + literal_name(goal.fluent) + ")";
  return literal_name(goal.fluent);
}

std::string Domain::waiver_name(const Waiver& waiver) const {
  const std::string& a = actions_[waiver.action].name;
  switch (waiver.kind) {
    case WaiverKind::NotPermitted: return "ignore_not_permitted(" + a + ")";
    case WaiverKind::NegPermitted: return "ignore_neg_permitted(" + a + ")";
    case WaiverKind::OblDo: return "ignore_obl(" + a + ")";
    case WaiverKind::OblRefrain: return "ignore_obl(neg(" + a + "))";
  }
  return a;
}

std::string Domain::component_name(const Component& component) const {
  std::string out = actions_[component.action].name;
  for (const auto& w : component.waivers) out += " + " + waiver_name(w);
  return out;
}

std::optional<Goal> Domain::resolve_goal(const ast::Goal& goal, std::string* error) const {
  const std::string name = dsl::ground_name(goal.literal.atom, {});
  auto id = find_fluent(name);
  if (!id) {
    if (error) *error = "goal '" + name + "' is not a declared ground fluent";
    return std::nullopt;
  }
  return Goal{{*id, !goal.literal.negated}, goal.policy_compliant};
}

std::optional<Waiver> Domain::resolve_waiver(const ast::Term& term, std::string* error) const {
  auto fail = [&](const std::string& why) -> std::optional<Waiver> {
    if (error) *error = why;
    return std::nullopt;
  };
  if (term.args.size() != 1) return fail("'" + ast::to_string(term) + "' is not a policy action");
  Waiver w;
  const ast::Term* subject = &term.args[0];
  if (term.name == "ignore_not_permitted") {
    w.kind = WaiverKind::NotPermitted;
  } else if (term.name == "ignore_neg_permitted") {
    w.kind = WaiverKind::NegPermitted;
  } else if (term.name == "ignore_obl") {
    w.kind = WaiverKind::OblDo;
    if (subject->name == "neg" && subject->args.size() == 1) {
      w.kind = WaiverKind::OblRefrain;
      subject = &subject->args[0];
    }
  } else {
    return fail("'" + ast::to_string(term) + "' is not a policy action");
  }
  const std::string name = dsl::ground_name(*subject, {});
  auto id = find_action(name);
  if (!id || !is_agent_action(*id)) return fail("policy action '" + ast::to_string(term) + "' names no agent action");
  w.action = *id;
  return w;
}

ParseResult<Domain> parse_domain(std::string_view text) {
  ParseResult<Domain> result;
  ast::Domain syntax;
  for (const auto& statement : dsl::split_statements(text, result.diagnostics)) {
    Cursor in(statement);
    try {
      parse_statement(in, syntax);
    } catch (const dsl::SyntaxError& e) {
      result.diagnostics.push_back({e.loc, Severity::Error, e.message});
    }
  }
  DomainBuilder builder(result.diagnostics);
  Domain domain = builder.build(std::move(syntax));
  if (!has_errors(result.diagnostics)) result.value = std::move(domain);
  return result;
}

Domain parse_domain_or_throw(std::string_view text) {
  auto result = parse_domain(text);
  if (!result.ok()) {
    throw ParseError("domain has errors:\n" + format_diagnostics(result.diagnostics, "<domain>"),
                     result.diagnostics);
  }
  return std::move(*result.value);
}

}  // namespace apia
