#include <doctest.h>

#include "support.hpp"

using namespace apia;
using apia::testing::Office;

namespace {

const auto never = [](const Goal&) { return false; };

}  // namespace

TEST_CASE("selecting a goal activates it") {
  Office o('a');
  const Goal g = o.goal("greeted_by(alice,bob)");
  MentalInputs in;
  in.goal_events.push_back({true, g});
  auto m = apply_mental_dynamics({}, in, o.domain.activities(), never);
  CHECK(m.goal_active(g));
  CHECK_FALSE(m.active_activity().has_value());
  MentalInputs drop;
  drop.goal_events.push_back({false, g});
  CHECK_FALSE(apply_mental_dynamics(m, drop, o.domain.activities(), never).goal_active(g));
}

TEST_CASE("starting then executing a component advances status") {
  Office o('a');
  const auto& acts = o.domain.activities();
  MentalInputs start;
  start.mental = MentalAction{MentalKind::Start, 1};
  auto m = apply_mental_dynamics({}, start, acts, never);
  CHECK(m.status_of(1) == 0);
  MentalInputs move;
  move.physical = o.action("move_through(alice,d12)");
  m = apply_mental_dynamics(m, move, acts, never);
  CHECK(m.status_of(1) == 1);
  // an action that is not the next component does not advance
  MentalInputs other;
  other.physical = o.action("greet(alice,bob)");
  CHECK(apply_mental_dynamics(m, other, acts, never).status_of(1) == 1);
  MentalInputs stop;
  stop.mental = MentalAction{MentalKind::Stop, 1};
  CHECK(apply_mental_dynamics(m, stop, acts, never).status_of(1) == -1);
}

TEST_CASE("nothing happening leaves the mental state alone") {
  Office o('a');
  MentalState m;
  m.active_goals.insert(o.goal("greeted_by(alice,bob)"));
  m.status[1] = 2;
  CHECK(apply_mental_dynamics(m, {}, o.domain.activities(), never) == m);
}

TEST_CASE("next component of the active activity") {
  Office o('b');
  const auto& acts = o.domain.activities();
  MentalState m;
  m.status[1] = 0;
  REQUIRE(next_physical_action(m, acts).has_value());
  CHECK(next_physical_action(m, acts)->action == o.action("move_through(alice,d12)"));
  m.status[1] = 4;
  CHECK_FALSE(next_physical_action(m, acts).has_value());
  MentalState three;
  three.status[3] = 1;
  CHECK(next_physical_action(three, acts)->action == o.action("move_through(alice,d34)"));
  CHECK_FALSE(next_physical_action({}, acts).has_value());
}

TEST_CASE("achieved goals are dropped") {
  Office o('a');
  const Goal g = o.goal("greeted_by(alice,bob)");
  MentalState m;
  m.active_goals.insert(g);
  m.status[1] = 3;
  MentalInputs greet;
  greet.physical = o.action("greet(alice,bob)");
  auto after = apply_mental_dynamics(m, greet, o.domain.activities(), [&](const Goal& x) { return x == g; });
  CHECK_FALSE(after.goal_active(g));
  CHECK(after.status_of(1) == 4);
}

TEST_CASE("intention errors") {
  Office o('b');
  MentalState m;
  m.status[1] = 0;
  MentalInputs start2;
  start2.mental = MentalAction{MentalKind::Start, 2};
  CHECK_THROWS_AS(apply_mental_dynamics(m, start2, o.domain.activities(), never), IntentionError);
  MentalInputs stop3;
  stop3.mental = MentalAction{MentalKind::Stop, 3};
  CHECK_THROWS_AS(apply_mental_dynamics(m, stop3, o.domain.activities(), never), IntentionError);
}

TEST_CASE("random walks keep one activity and never skip a component") {
  Office o('b');
  const auto& acts = o.domain.activities();
  const Goal g = o.goal("greeted_by(alice,bob)");
  std::mt19937 rng(5);
  for (int walk = 0; walk < 200; ++walk) {
    MentalState m;
    m.active_goals.insert(g);
    for (int step = 0; step < 30; ++step) {
      MentalInputs in;
      const int roll = static_cast<int>(rng() % 10);
      const auto active = m.active_activity();
      if (roll == 0 && !active) {
        in.mental = MentalAction{MentalKind::Start, 1 + static_cast<int>(rng() % 3)};
      } else if (roll == 1 && active) {
        in.mental = MentalAction{MentalKind::Stop, *active};
      } else if (roll < 7) {
        in.physical = o.domain.agent_actions()[rng() % o.domain.agent_actions().size()];
      }
      const MentalState before = m;
      m = apply_mental_dynamics(m, in, acts, never);
      int running = 0;
      for (const auto& [id, status] : m.status) {
        if (status < 0) continue;
        ++running;
        CHECK(status <= find_activity(acts, id)->length());
        const int was = before.status_of(id);
        CHECK((status == was || status == was + 1 || (was < 0 && status == 0)));
      }
      CHECK(running <= 1);
      if (!in.mental) CHECK(m.goal_active(g));
      if (!in.mental && !in.physical) CHECK(m == before);
    }
  }
}
