#include <doctest.h>

#include "support.hpp"

using namespace apia;
using apia::testing::Office;

namespace {

std::vector<ModeConfig> all_modes() {
  std::vector<ModeConfig> out;
  for (const auto& a : auth_mode_names()) {
    for (const auto& o : obl_mode_names()) out.push_back(ModeConfig::of(*parse_auth_mode(a), *parse_obl_mode(o)));
  }
  return out;
}

// Which compliance fluents a mode's goal test keeps, written out from the mode tables.
std::array<bool, 4> kept(const ModeConfig& m) {
  const bool strong = m.auth == AuthMode::Paranoid || m.auth == AuthMode::Cautious || m.auth == AuthMode::BestEffort;
  const bool weak = m.auth != AuthMode::Utilitarian;
  const bool obl = m.obl != OblMode::Utilitarian;
  return {strong, weak, obl, obl};
}

Waiver w(WaiverKind k, ActionId a) { return Waiver{k, a}; }

}  // namespace

TEST_CASE("mode names round-trip") {
  CHECK(auth_mode_names().size() == 6);
  CHECK(obl_mode_names().size() == 5);
  for (const auto& n : auth_mode_names()) CHECK(to_string(*parse_auth_mode(n)) == n);
  for (const auto& n : obl_mode_names()) CHECK(to_string(*parse_obl_mode(n)) == n);
  CHECK_FALSE(parse_auth_mode("best effort").has_value());
  CHECK_FALSE(parse_obl_mode("permit-everything").has_value());
  CHECK(ModeConfig::of(AuthMode::BestEffort, OblMode::PermitCommissions).name() == "best-effort/permit-commissions");
}

TEST_CASE("goal test truth table for every mode") {
  Office o('a');
  const CompiledDomain base(o.domain, &o.policy, {});
  const FluentId f = o.fluent("greeted_by(alice,bob)");
  for (const ModeConfig& m : all_modes()) {
    CAPTURE(m.name());
    const CompiledDomain cd(o.domain, &o.policy, m);
    const auto keep = kept(m);
    for (int bits = 0; bits < 16; ++bits) {
      ComplianceFluents c;
      for (int k = 0; k < 4; ++k) c.values[k] = (bits >> k) & 1;
      bool expect = true;
      for (int k = 0; k < 4; ++k) expect = expect && (!keep[k] || c.values[k]);
      CHECK(cd.policy_compliant({f, true}, o.state({"greeted_by(alice,bob)"}), c) == expect);
      CHECK_FALSE(cd.policy_compliant({f, true}, o.state({}), c));
    }
  }
}

TEST_CASE("utilitarian mode drops the policy layer") {
  Office o('c');
  const CompiledDomain cd(o.domain, &o.policy, ModeConfig::of(AuthMode::Utilitarian, OblMode::Utilitarian));
  const ActionId g = o.action("greet(alice,bob)");
  for (int k = 0; k < 4; ++k) CHECK(cd.mode().handling(static_cast<WaiverKind>(k)) == Handling::Disregard);
  ActionSet with = ActionSet::of(g, {w(WaiverKind::NotPermitted, g), w(WaiverKind::NegPermitted, g)});
  CHECK(cd.admissible_form(with).waivers.empty());
  ComplianceFluents none{{false, false, false, false}};
  CHECK(cd.policy_compliant({o.fluent("greeted_by(alice,bob)"), true}, o.state({"greeted_by(alice,bob)"}), none));
}

TEST_CASE("paranoid subordinate forbids every ignore action") {
  Office o('c');
  const CompiledDomain cd(o.domain, &o.policy, ModeConfig::of(AuthMode::Paranoid, OblMode::Subordinate));
  for (int k = 0; k < 4; ++k) CHECK(cd.mode().forbidden(static_cast<WaiverKind>(k)));
  CHECK(cd.mode().threshold() == "strong");
  const ActionId g = o.action("greet(alice,bob)");
  auto s = o.state({"in_room(alice,r4)", "in_room(bob,r4)"});
  CHECK(cd.executable(s, ActionSet::of(g)).executable);
  CHECK_FALSE(cd.executable(s, ActionSet::of(g, {w(WaiverKind::NotPermitted, g)})).executable);
  ComplianceFluents c;
  c.values[0] = false;
  CHECK_FALSE(cd.policy_compliant({o.fluent("greeted_by(alice,bob)"), true}, o.state({"greeted_by(alice,bob)"}), c));
}

TEST_CASE("subordinate drops only the strong conjunct") {
  Office o('a');
  const CompiledDomain cd(o.domain, &o.policy, ModeConfig::of(AuthMode::Subordinate, OblMode::Subordinate));
  CHECK(cd.mode().threshold() == "weak");
  const State s = o.state({"greeted_by(alice,bob)"});
  const FluentLiteral f{o.fluent("greeted_by(alice,bob)"), true};
  CHECK(cd.policy_compliant(f, s, ComplianceFluents{{false, true, true, true}}));
  CHECK_FALSE(cd.policy_compliant(f, s, ComplianceFluents{{true, false, true, true}}));
}

TEST_CASE("ignore actions keep compliance fluents true") {
  const ModeConfig best = ModeConfig::of(AuthMode::BestEffort, OblMode::BestEffort);
  SUBCASE("weak greeting dismissed") {
    Office o('b');
    const CompiledDomain cd(o.domain, &o.policy, best);
    const ActionId g = o.action("greet(alice,bob)");
    const State s = o.state({"in_room(alice,r4)", "in_room(bob,r4)", "busy_working(bob)"});
    auto out = cd.step(s, {}, ActionSet::of(g, {w(WaiverKind::NotPermitted, g)}));
    CHECK(out.compliance.strong());
    CHECK(out.waived.size() == 1);
  }
  SUBCASE("forbidden greeting dismissed twice") {
    Office o('c');
    const CompiledDomain cd(o.domain, &o.policy, best);
    const ActionId g = o.action("greet(alice,bob)");
    const State s = o.state({"in_room(alice,r4)", "in_room(bob,r4)", "busy_working(bob)"});
    auto out = cd.step(s, {}, ActionSet::of(g, {w(WaiverKind::NotPermitted, g), w(WaiverKind::NegPermitted, g)}));
    CHECK(out.compliance.strong());
    CHECK(out.compliance.weak());
    auto bare = cd.step(s, {}, ActionSet::of(g));
    CHECK_FALSE(bare.compliance.strong());
    CHECK_FALSE(bare.compliance.weak());
  }
  SUBCASE("weak step without an ignore stays degraded") {
    Office o('b');
    const CompiledDomain cd(o.domain, &o.policy, best);
    const State s = o.state({"in_room(alice,r4)", "in_room(bob,r4)", "busy_working(bob)"});
    auto out = cd.step(s, {}, ActionSet::of(o.action("greet(alice,bob)")));
    CHECK_FALSE(out.compliance.strong());
    CHECK(out.compliance.weak());
    auto later = cd.step(out.state, out.compliance, ActionSet::of(o.action("move_through(alice,d34)")));
    CHECK_FALSE(later.compliance.strong());
  }
}

TEST_CASE("ignore action about another action is rejected") {
  Office o('b');
  const CompiledDomain cd(o.domain, &o.policy, ModeConfig::of(AuthMode::BestEffort, OblMode::BestEffort));
  const State s = o.state({"in_room(alice,r3)", "in_room(bob,r4)"});
  const ActionId m = o.action("move_through(alice,d34)");
  const ActionId g = o.action("greet(alice,bob)");
  CHECK_THROWS_AS(cd.executable(s, ActionSet::of(m, {w(WaiverKind::NotPermitted, g)})), DanglingWaiver);
}

TEST_CASE("required waivers follow the mode") {
  Office o('c');
  const State s = o.state({"in_room(alice,r4)", "in_room(bob,r4)", "busy_working(bob)"});
  const ActionId g = o.action("greet(alice,bob)");
  auto need = [&](AuthMode a) {
    return CompiledDomain(o.domain, &o.policy, ModeConfig::of(a, OblMode::BestEffort)).required_waivers(s, g);
  };
  CHECK_FALSE(need(AuthMode::Paranoid).has_value());
  CHECK_FALSE(need(AuthMode::Cautious).has_value());
  CHECK_FALSE(need(AuthMode::Subordinate).has_value());
  REQUIRE(need(AuthMode::BestEffort).has_value());
  CHECK(need(AuthMode::BestEffort)->size() == 2);
  REQUIRE(need(AuthMode::SubordinateWhenPossible).has_value());
  CHECK(*need(AuthMode::SubordinateWhenPossible) == std::vector<Waiver>{w(WaiverKind::NegPermitted, g)});
  REQUIRE(need(AuthMode::Utilitarian).has_value());
  CHECK(need(AuthMode::Utilitarian)->empty());
}

TEST_CASE("cost order ranks non-compliance before weak before length") {
  CostVector one_weak{0, 1, 0, 1};
  CostVector one_nc{1, 0, 0, 1};
  CostVector one_obl{0, 0, 1, 1};
  CostVector long_clean{0, 0, 0, 9};
  CHECK(one_weak < one_nc);
  CHECK(one_weak < one_obl);
  CHECK(long_clean < one_weak);
  CHECK(CostVector{0, 0, 0, 3} < CostVector{0, 0, 0, 4});
  CHECK(CostVector{0, 2, 0, 1} > CostVector{0, 1, 0, 5});
  CHECK(to_string(CostVector{1, 1, 0, 4}) == "(1,1,0,4)");
  CostVector c;
  c.add({WaiverKind::OblRefrain, 0});
  c.add({WaiverKind::OblDo, 0});
  c.add({WaiverKind::NotPermitted, 0});
  CHECK(c.obl == 2);
  CHECK(c.weak == 1);
  CHECK(c.waivers() == 3);
}

TEST_CASE("obligation waivers") {
  auto d = parse_domain_or_throw(apia::testing::read_fixture("toy.dom"));
  auto p = parse_policy_or_throw("permitted(a)\npermitted(b)\nobl(b) if p\nobl(-a) if q\n", d);
  const ActionId a = *d.find_action("a");
  const ActionId b = *d.find_action("b");
  BitSet v(d.fluent_count());
  v.set(*d.find_fluent("p"));
  const State s = make_state(v, d);
  const CompiledDomain permissive(d, &p, ModeConfig::of(AuthMode::Paranoid, OblMode::PermitOmissions));
  auto need = permissive.required_waivers(s, a);
  REQUIRE(need.has_value());
  CHECK(*need == std::vector<Waiver>{{WaiverKind::OblDo, b}});
  // The omission waiver names the obligation's subject, not the action taken.
  CHECK(permissive.executable(s, ActionSet::of(a, *need)).executable);
  auto out = permissive.step(s, {}, ActionSet::of(a, *need));
  CHECK(out.compliance.obl_do());
  const CompiledDomain strict(d, &p, ModeConfig::of(AuthMode::Paranoid, OblMode::Subordinate));
  CHECK_FALSE(strict.required_waivers(s, a).has_value());
  CHECK(strict.required_waivers(s, b).has_value());
}
