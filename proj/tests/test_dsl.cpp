#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace apia;
using apia::testing::Office;
using apia::testing::read_fixture;

namespace {

std::set<std::string> predicates(const Domain& d, bool fluents) {
  std::set<std::string> out;
  if (fluents) {
    for (FluentId f = 0; f < d.fluent_count(); ++f) out.insert(d.fluent(f).predicate);
  } else {
    for (ActionId a : d.agent_actions()) out.insert(d.action(a).predicate);
  }
  return out;
}

bool mentions(const std::vector<Diagnostic>& diags, const std::string& text) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.message.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("office domain declares its fluents and actions") {
  auto d = parse_domain(read_fixture("office_a.dom"));
  REQUIRE(d.ok());
  CHECK(predicates(*d, true) == std::set<std::string>{"door_locked", "in_room", "greeted_by"});
  CHECK(predicates(*d, false) == std::set<std::string>{"move_through", "lock_door", "unlock_door", "greet"});
  // 3 doors + 2 people x 4 rooms + 2 x 2 greetings
  CHECK(d->fluent_count() == 3 + 8 + 4);
  CHECK(d->find_fluent("in_room(alice,r1)").has_value());
  CHECK(d->find_action("move_through(alice,d34)").has_value());
  CHECK_FALSE(d->find_action("move_through(bob,d34)").has_value());
}

TEST_CASE("empty domain is valid") {
  auto d = parse_domain("");
  REQUIRE(d.ok());
  CHECK(d->fluent_count() == 0);
  CHECK(d->action_count() == 0);
  CHECK(d->activities().empty());
  auto only_comments = parse_domain("% nothing here\n\n   % still nothing\n");
  CHECK(only_comments.ok());
}

TEST_CASE("policy over an undeclared action is rejected") {
  Office o('a');
  auto p = parse_policy("permitted(greet_loudly(alice, bob))\n", o.domain);
  CHECK_FALSE(p.ok());
  CHECK(mentions(p.diagnostics, "policy statement describes an object that is not declared as an action"));
}

TEST_CASE("policy over a fluent or an exogenous action is rejected") {
  Office o('b');
  CHECK_FALSE(parse_policy("permitted(in_room(alice, r1))\n", o.domain).ok());
  CHECK_FALSE(parse_policy("permitted(begin_working(bob))\n", o.domain).ok());
  CHECK_FALSE(parse_policy("permitted(start(1))\n", o.domain).ok());
}

TEST_CASE("labelled rules and preferences are grounded") {
  Office o('d');
  const auto& rules = o.policy.rules_labelled("m1(alice,d34)");
  REQUIRE(rules.size() == 1);
  CHECK(o.policy.rules()[rules[0]].defeasible);
  CHECK(o.policy.rules()[rules[0]].modality == Modality::Permitted);
  // m2 only grounds where its static condition can hold: doors into the private office.
  CHECK_FALSE(o.policy.rules_labelled("m2(alice,d34)").empty());
  CHECK(o.policy.rules_labelled("m2(alice,d12)").empty());
  const auto& prefers = o.policy.prefers();
  CHECK(std::find(prefers.begin(), prefers.end(), PreferEdge{"m2(alice,d34)", "m1(alice,d34)"}) != prefers.end());
  CHECK(prefers.size() == 1);
  REQUIRE(o.policy.syntax().prefers.size() == 1);
}

TEST_CASE("all-permitted policy has one unconditional strict rule per action") {
  Office o('a');
  CHECK(o.policy.rules().size() == o.domain.agent_actions().size());
  std::set<ActionId> subjects;
  for (const auto& r : o.policy.rules()) {
    CHECK_FALSE(r.defeasible);
    CHECK(r.condition.empty());
    CHECK(r.modality == Modality::Permitted);
    subjects.insert(r.subject);
  }
  CHECK(subjects.size() == o.domain.agent_actions().size());
}

TEST_CASE("policy statement errors") {
  auto d = parse_domain_or_throw(read_fixture("toy.dom"));
  SUBCASE("dangling preference") {
    auto p = parse_policy("d1: normally permitted(a)\nprefer(d1, nowhere)\n", d);
    CHECK_FALSE(p.ok());
  }
  SUBCASE("defeasible rule needs a label") { CHECK_FALSE(parse_policy("normally permitted(a)\n", d).ok()); }
  SUBCASE("label reused") {
    CHECK_FALSE(parse_policy("d1: normally permitted(a)\nd1: normally permitted(b)\n", d).ok());
  }
  SUBCASE("negated permission subject") { CHECK_FALSE(parse_policy("permitted(-a)\n", d).ok()); }
  SUBCASE("both refrain spellings") {
    auto x = parse_policy("obl(-a) if p\n", d);
    auto y = parse_policy("obl(neg(a)) if p\n", d);
    REQUIRE(x.ok());
    REQUIRE(y.ok());
    CHECK(x->rules()[0].refrain);
    CHECK(y->rules()[0].refrain);
  }
}

TEST_CASE("office scenario observations and goal selection") {
  Office o('a');
  auto obs = o.scenario.observations_at(0);
  auto has = [&](const std::string& name, bool positive) {
    return std::find(obs.begin(), obs.end(), FluentLiteral{o.fluent(name), positive}) != obs.end();
  };
  CHECK(has("in_room(alice,r1)", true));
  CHECK(has("in_room(bob,r4)", true));
  CHECK(has("door_locked(d34)", false));
  CHECK(has("greeted_by(alice,bob)", false));
  auto events = o.scenario.events_at(0);
  REQUIRE(events.size() == 1);
  REQUIRE(events[0].goal_event.has_value());
  CHECK(events[0].goal_event->select);
  CHECK(events[0].goal_event->goal == o.goal("greeted_by(alice,bob)"));
  CHECK(o.scenario.mode() == ModeConfig::of(AuthMode::Paranoid, OblMode::Subordinate));
}

TEST_CASE("scenario without events parses and the agent only waits") {
  Office o('a');
  auto s = parse_scenario("observe 0: in_room(alice, r1), in_room(bob, r4)\n", o.domain);
  REQUIRE(s.ok());
  CHECK(s->events.empty());
  Agent agent(o.domain, &o.policy, *s, LoopConfig::from(*s));
  for (int i = 0; i < 3; ++i) CHECK(agent.run_iteration().intended == "wait");
  CHECK(agent.quiescent());
}

TEST_CASE("scripted agent action is rejected") {
  Office o('a');
  auto s = parse_scenario("event 2: move_through(alice, d12)\n", o.domain);
  CHECK_FALSE(s.ok());
  CHECK(mentions(s.diagnostics, "agent action"));
  CHECK_FALSE(parse_scenario("event 1: start(1)\n", o.domain).ok());
}

TEST_CASE("select and select_goal are the same event") {
  Office o('a');
  auto x = parse_scenario("event 0: select(policy_compliant(greeted_by(alice, bob)))\n", o.domain);
  auto y = parse_scenario("event 0: select_goal(policy_compliant(greeted_by(alice, bob)))\n", o.domain);
  REQUIRE(x.ok());
  REQUIRE(y.ok());
  CHECK(x->events[0].goal_event == y->events[0].goal_event);
}

TEST_CASE("unknown mode names are rejected with the valid list") {
  Office o('a');
  auto s = parse_scenario("mode reckless subordinate\n", o.domain);
  CHECK_FALSE(s.ok());
  CHECK(mentions(s.diagnostics, "best-effort"));
  auto ok = parse_scenario("mode subordinate-when-possible permit-omissions\n", o.domain);
  REQUIRE(ok.ok());
  CHECK(ok->auth_mode == AuthMode::SubordinateWhenPossible);
  CHECK(ok->obl_mode == OblMode::PermitOmissions);
}

TEST_CASE("every error is reported with a location") {
  const char* text =
      "inertial fluent p\n"
      "action a physical agent\n"
      "a causes nothere\n"
      "b causes p\n"
      "impossible a if alsonot\n";
  auto d = parse_domain(text);
  CHECK_FALSE(d.ok());
  CHECK(d.diagnostics.size() >= 3);
  for (const auto& diag : d.diagnostics) CHECK(diag.loc.line > 0);
  const std::string rendered = format_diagnostics(d.diagnostics, "x.dom");
  CHECK(rendered.find("x.dom:3:") != std::string::npos);
  CHECK(rendered.find("x.dom:4:") != std::string::npos);
}

TEST_CASE("syntax errors do not stop later lines from being checked") {
  auto d = parse_domain("inertial fluent p q\naction a physical agent\na causes r\n");
  CHECK_FALSE(d.ok());
  CHECK(d.diagnostics.size() >= 2);
}

TEST_CASE("printing then re-parsing gives the same structure") {
  for (const char* name : {"office_a.dom", "office_b.dom", "office_c.dom", "office_d.dom", "toy.dom"}) {
    CAPTURE(name);
    auto d = parse_domain_or_throw(read_fixture(name));
    const std::string printed = ast::print(d.syntax());
    auto again = parse_domain(printed);
    REQUIRE(again.ok());
    CHECK(again->syntax() == d.syntax());
    CHECK(ast::print(again->syntax()) == printed);
  }
  for (char letter : {'a', 'b', 'c', 'd'}) {
    Office o(letter);
    const std::string printed = ast::print(o.policy.syntax());
    auto again = parse_policy(printed, o.domain);
    REQUIRE(again.ok());
    CHECK(again->syntax() == o.policy.syntax());
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto text = apia::testing::random_text(rng, {3, 3, 5, true, true});
    auto d = parse_domain_or_throw(text.domain);
    auto again = parse_domain_or_throw(ast::print(d.syntax()));
    CHECK(again.syntax() == d.syntax());
    auto p = parse_policy_or_throw(text.policy, d);
    CHECK(parse_policy_or_throw(ast::print(p.syntax()), d).syntax() == p.syntax());
  }
}

TEST_CASE("variables are instantiated over their sorts") {
  Office o('a');
  // one causal law per (door, room, room) combination that passes R1 != R2, plus leave-room laws
  std::size_t moves = 0;
  for (const auto& law : o.domain.causal_laws()) {
    if (o.domain.action(law.trigger).predicate == "move_through") ++moves;
  }
  CHECK(moves > 0);
  const ActionId greet_self = o.action("greet(alice,alice)");
  CHECK_FALSE(o.domain.executability_laws_for(greet_self).empty());
}
