// Serial vs OpenMP timings for planning and policy consistency checking on a
// corridor of rooms with a bank of switches.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "apia/planner.hpp"

using namespace apia;

namespace {

std::string corridor(int rooms, int switches) {
  std::ostringstream d;
  d << "sort room =";
  for (int r = 0; r < rooms; ++r) d << (r ? ", " : " ") << "r" << r;
  d << "\nsort switch =";
  for (int s = 0; s < switches; ++s) d << (s ? ", " : " ") << "s" << s;
  d << "\nstatic next(room, room)\n";
  for (int r = 0; r + 1 < rooms; ++r) d << "fact next(r" << r << ", r" << r + 1 << ")\n";
  d << "inertial fluent at(room)\n"
       "inertial fluent on(switch)\n"
       "action forward physical agent\n"
       "action back physical agent\n"
       "action flip(switch) physical agent\n"
       "forward causes at(B) if at(A), next(A, B)\n"
       "forward causes -at(A) if at(A), next(A, B)\n"
       "back causes at(A) if at(B), next(A, B)\n"
       "back causes -at(B) if at(B), next(A, B)\n"
       "flip(S) causes on(S) if -on(S)\n"
       "flip(S) causes -on(S) if on(S)\n"
       "impossible forward if at(r"
    << rooms - 1 << ")\nimpossible back if at(r0)\n";
  return d.str();
}

std::string corridor_policy(int switches) {
  std::ostringstream p;
  p << "permitted(forward)\n"
       "b1: normally permitted(back)\n"
       "b2: normally -permitted(back) if on(s0)\n"
       "prefer(b2, b1)\n";
  for (int s = 0; s < switches; ++s) {
    p << "f" << s << ": normally permitted(flip(s" << s << "))\n";
    if (s + 1 < switches) p << "obl(-flip(s" << s + 1 << ")) if -on(s" << s << ")\n";
  }
  return p.str();
}

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apia serial/parallel benchmark"};
  int rooms = 8;
  int switches = 8;
  int horizon = 10;
  int reps = 3;
  app.add_option("--rooms", rooms)->check(CLI::Range(2, 64));
  app.add_option("--switches", switches)->check(CLI::Range(1, 16));
  app.add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  app.add_option("--reps", reps)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const Domain d = parse_domain_or_throw(corridor(rooms, switches));
  const Policy p = parse_policy_or_throw(corridor_policy(switches), d);
  BitSet v(d.fluent_count());
  v.set(*d.find_fluent("at(r0)"));
  const State start = make_state(v, d);
  const Goal goal{{*d.find_fluent("at(r" + std::to_string(rooms - 1) + ")"), true}, true};
  const CompiledDomain cd(d, &p, ModeConfig::of(AuthMode::BestEffort, OblMode::BestEffort));

  std::printf("corridor: %d rooms, %d switches, horizon %d, %d OpenMP thread(s)\n", rooms, switches, horizon,
              omp_get_max_threads());
  std::printf("%-24s %12s %12s %9s %s\n", "kernel", "serial ms", "parallel ms", "speedup", "same result");

  PlanOptions serial;
  serial.horizon = horizon;
  serial.exec = Exec::Serial;
  PlanOptions parallel = serial;
  parallel.exec = Exec::Parallel;
  std::optional<Plan> a, b;
  const double ps = best_of(reps, [&] { a = plan(cd, start, goal, serial); });
  const double pp = best_of(reps, [&] { b = plan(cd, start, goal, parallel); });
  std::printf("%-24s %12.2f %12.2f %9.2f %s\n", "plan", ps, pp, ps / pp, a == b ? "yes" : "NO");

  const auto states = reachable_states(d, start, horizon);
  ConsistencyReport x, y;
  const double cs = best_of(reps, [&] { x = check_policy_consistency(p, d, states, Exec::Serial); });
  const double cp = best_of(reps, [&] { y = check_policy_consistency(p, d, states, Exec::Parallel); });
  const bool same = x.states_checked == y.states_checked && x.violations.size() == y.violations.size();
  char label[64];
  std::snprintf(label, sizeof label, "consistency (%zu states)", states.size());
  std::printf("%-24s %12.2f %12.2f %9.2f %s\n", label, cs, cp, cs / cp, same ? "yes" : "NO");
  if (a) std::printf("plan cost %s, %zu steps\n", to_string(a->cost).c_str(), a->steps.size());
  return a == b && same ? 0 : 1;
}
