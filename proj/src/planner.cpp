#include "apia/planner.hpp"

#include <algorithm>
#include <exception>
#include <unordered_map>

namespace apia {
namespace {

struct Label {
  CostVector cost;
  std::vector<int> ranks;  // action ranks along the path, for tie-breaking
  std::vector<Component> steps;
  ComplianceFluents compliance;
};

bool better(const Label& a, const Label& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.ranks < b.ranks;
}

struct Node {
  State state;
  Label label;
};

// Successors of one node, one per admissible agent action.
std::vector<Node> expand(const CompiledDomain& cd, const Node& node) {
  std::vector<Node> out;
  const Domain& d = cd.domain();
  for (ActionId a : d.agent_actions()) {
    auto waivers = cd.required_waivers(node.state, a);
    if (!waivers) continue;
    const ActionSet actions = ActionSet::of(a, *waivers);
    if (!cd.executable(node.state, actions)) continue;
    StepOutcome next;
    try {
      next = cd.step(node.state, node.label.compliance, actions);
    } catch (const InconsistentEffects&) {
      continue;
    }
    Node child{std::move(next.state), node.label};
    child.state.step = 0;
    child.label.compliance = next.compliance;
    for (const Waiver& w : *waivers) child.label.cost.add(w);
    ++child.label.cost.length;
    child.label.ranks.push_back(d.action_rank(a));
    child.label.steps.push_back({a, *waivers});
    out.push_back(std::move(child));
  }
  return out;
}

}  // namespace

std::optional<Plan> plan(const CompiledDomain& cd, const State& start, const Goal& goal, const PlanOptions& options) {
  std::optional<Label> best;
  auto consider = [&](const Node& n) {
    if (!cd.goal_holds(goal, n.state, n.label.compliance)) return;
    if (!best || better(n.label, *best)) best = n.label;
  };

  std::vector<Node> frontier{{start, Label{{}, {}, {}, options.compliance}}};
  frontier.front().state.step = 0;
  consider(frontier.front());
  for (int depth = 1; depth <= options.horizon && !frontier.empty(); ++depth) {
    std::vector<std::vector<Node>> children(frontier.size());
    const auto n = static_cast<std::ptrdiff_t>(frontier.size());
    if (options.exec == Exec::Parallel) {
      // Exceptions cannot cross the parallel region; keep the first by index.
      std::vector<std::exception_ptr> errors(frontier.size());
#pragma omp parallel for schedule(dynamic, 4)
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
          children[i] = expand(cd, frontier[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i) children[i] = expand(cd, frontier[i]);
    }
    std::vector<Node> layer;
    std::unordered_map<BitSet, std::size_t, BitSetHash> index;
    for (auto& group : children) {
      for (auto& child : group) {
        auto [it, fresh] = index.try_emplace(child.state.values, layer.size());
        if (fresh) {
          layer.push_back(std::move(child));
        } else if (better(child.label, layer[it->second].label)) {
          layer[it->second] = std::move(child);
        }
      }
    }
    for (const Node& node : layer) consider(node);
    frontier = std::move(layer);
  }
  if (!best) return std::nullopt;
  return Plan{std::move(best->steps), best->cost};
}

std::optional<Replay> replay(const CompiledDomain& cd, const State& start, const ComplianceFluents& compliance,
                             const std::vector<Component>& steps) {
  Replay r{start, compliance, {}};
  for (const Component& c : steps) {
    const ActionSet actions = cd.admissible_form(ActionSet::of(c.action, c.waivers));
    try {
      if (!cd.executable(r.state, actions)) return std::nullopt;
      StepOutcome next = cd.step(r.state, r.compliance, actions);
      r.state = std::move(next.state);
      r.compliance = next.compliance;
    } catch (const InconsistentEffects&) {
      return std::nullopt;
    } catch (const DanglingWaiver&) {
      return std::nullopt;
    }
    for (const Waiver& w : actions.waivers) r.cost.add(w);
    ++r.cost.length;
  }
  return r;
}

bool achieves(const CompiledDomain& cd, const State& start, const ComplianceFluents& compliance,
              const std::vector<Component>& steps, const Goal& goal) {
  auto r = replay(cd, start, compliance, steps);
  return r && cd.goal_holds(goal, r->state, r->compliance);
}

std::optional<StoredChoice> prefer_stored(const CompiledDomain& cd, const std::vector<Activity>& activities,
                                          const State& start, const Goal& goal, const ComplianceFluents& compliance) {
  std::optional<StoredChoice> best;
  for (const Activity& act : activities) {
    if (!(act.goal == goal)) continue;
    auto r = replay(cd, start, compliance, act.components);
    if (!r || !cd.goal_holds(goal, r->state, r->compliance)) continue;
    if (!best || r->cost < best->cost || (r->cost == best->cost && act.id < best->id)) best = StoredChoice{act.id, r->cost};
  }
  return best;
}

}  // namespace apia
