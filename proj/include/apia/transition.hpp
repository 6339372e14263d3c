#pragma once

// Physical transition relation: direct effects, defined-fluent closure,
// executability and inertia.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apia/bitset.hpp"
#include "apia/domain.hpp"

namespace apia {

// Complete valuation of inertial fluents plus the derived defined fluents,
// both stored in one bitset indexed by FluentId.
struct State {
  BitSet values;
  int step = 0;

  bool holds(FluentId f) const { return values.test(f); }
  bool holds(FluentLiteral l) const { return values.test(l.fluent) == l.positive; }

  // Step index does not take part in equality; it is bookkeeping.
  friend bool operator==(const State& a, const State& b) { return a.values == b.values; }
};

// Actions occurring at one step: at most one agent physical action, any
// number of exogenous physical actions and concurrent policy actions.
struct ActionSet {
  std::optional<ActionId> agent;
  std::vector<ActionId> exogenous;
  std::vector<Waiver> waivers;

  static ActionSet of(ActionId agent_action, std::vector<Waiver> waivers = {}) {
    ActionSet s;
    s.agent = agent_action;
    s.waivers = std::move(waivers);
    return s;
  }

  bool empty() const { return !agent && exogenous.empty() && waivers.empty(); }
  bool occurs(ActionId a) const;
  BitSet occurrences(std::size_t action_count) const;

  friend bool operator==(const ActionSet&, const ActionSet&) = default;
};

class InconsistentEffects : public std::runtime_error {
 public:
  explicit InconsistentEffects(const std::string& what) : std::runtime_error(what) {}
};

struct Executability {
  bool executable = true;
  std::vector<std::string> reasons;
  explicit operator bool() const { return executable; }
};

bool condition_holds(const Condition& condition, const BitSet& values, const BitSet& occurring);

// Throws std::invalid_argument if the set is malformed for `domain`.
void validate_action_set(const ActionSet& actions, const Domain& domain);

// Recomputes every defined fluent from the inertial part of `values` as the
// stratified least fixpoint of the state constraints.
BitSet close_defined(const BitSet& values, const Domain& domain);

// Builds a state from an inertial valuation (defined bits are ignored).
State make_state(BitSet inertial, const Domain& domain, int step = 0);

Executability executable(const State& state, const ActionSet& actions, const Domain& domain);

// Precondition: executable(state, actions, domain).
State successor(const State& state, const ActionSet& actions, const Domain& domain);

std::string describe(const State& state, const Domain& domain, bool include_false = false);
std::string describe(const ActionSet& actions, const Domain& domain);

}  // namespace apia
