#include "polymapf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace polymapf {
namespace {

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (int32_t x : v) {
      h ^= static_cast<size_t>(static_cast<uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Search {
  const ReducedGraph& graph;
  const SolveLimits& limits;
  int k;
  std::vector<int> starts;   // node ids
  std::vector<int> targets;  // node ids
  std::vector<std::vector<int>> dist_to_target;  // per robot, per node
  std::optional<long long> budget;

  // Arena of discovered joint states.
  std::vector<std::vector<int32_t>> states;
  std::vector<long long> best_g;
  std::vector<int> parent;

  // Key -> arena slot. The packed-u64 map is used when it can hold any
  // joint state losslessly; otherwise a vector-keyed map serves as backup.
  bool packed;
  std::unordered_map<uint64_t, int> slot_by_key;
  std::unordered_map<std::vector<int32_t>, int, VecHash> slot_by_vec;

  bool pruned_by_budget = false;
  long long expanded = 0;

  explicit Search(const Instance& inst, const SolveLimits& lim)
      : graph(*inst.graph), limits(lim), k(inst.k()) {
    packed = k <= 4 && graph.node_count() < 65536;
  }

  uint64_t pack(const std::vector<int32_t>& s) const {
    uint64_t key = 0;
    for (int i = 0; i < k; ++i) {
      key |= static_cast<uint64_t>(static_cast<uint16_t>(s[i]))
             << (16 * i);
    }
    return key;
  }

  // Arena slot for a state, creating it if new (g = +inf until relaxed).
  int slot_of(const std::vector<int32_t>& s) {
    if (packed) {
      auto [it, inserted] = slot_by_key.try_emplace(pack(s), -1);
      if (!inserted) return it->second;
      it->second = allocate(s);
      return it->second;
    }
    auto [it, inserted] = slot_by_vec.try_emplace(s, -1);
    if (!inserted) return it->second;
    it->second = allocate(s);
    return it->second;
  }

  int allocate(const std::vector<int32_t>& s) {
    if (static_cast<long long>(states.size()) >= limits.state_cap) {
      raise(ErrorKind::ResourceCap, "StateCapExceeded",
            "joint-state store exceeded the cap of " +
                std::to_string(limits.state_cap));
    }
    states.push_back(s);
    best_g.push_back(-1);
    parent.push_back(-1);
    return static_cast<int>(states.size()) - 1;
  }

  long long heuristic(const std::vector<int32_t>& s) const {
    long long h = 0;
    for (int i = 0; i < k; ++i) {
      int d = dist_to_target[static_cast<size_t>(i)]
                            [static_cast<size_t>(s[static_cast<size_t>(i)])];
      if (d == kUnreachable) return -1;
      h += d;
    }
    return h;
  }
};

// Priority-queue entry ordered by (f ascending, joint state lexicographically
// ascending) so witness schedules are reproducible.
struct QueueEntry {
  long long f;
  long long g;
  int slot;
};

}  // namespace

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::BudgetExceeded: return "BudgetExceeded";
    case SolveStatus::Timeout: return "Timeout";
  }
  return "?";
}

OptResult solve_optimal(const Instance& instance, const SolveLimits& limits) {
  if (instance.k() < 1) {
    raise(ErrorKind::InvalidInstance, "NoRobots",
          "solver requires at least one robot");
  }
  const ReducedGraph& graph = *instance.graph;
  Search search(instance, limits);
  const int k = search.k;

  // Up-front state-space bound: |V|^k must fit under the cap.
  {
    mpz_class space = 1;
    for (int i = 0; i < k; ++i) space *= graph.node_count();
    if (space > static_cast<long>(limits.state_cap)) {
      raise(ErrorKind::ResourceCap, "StateCapExceeded",
            "joint state space " + space.get_str() + " exceeds the cap of " +
                std::to_string(limits.state_cap));
    }
  }

  search.budget = instance.budget;
  search.starts.reserve(static_cast<size_t>(k));
  search.targets.reserve(static_cast<size_t>(k));
  for (const Robot& r : instance.robots) {
    int s = graph.node_of_grid(r.start);
    int t = graph.node_of_grid(r.target);
    if (s < 0 || t < 0) {
      raise(ErrorKind::InvalidInstance, "TerminalRemoved",
            "robot " + std::to_string(r.id) +
                " has a start or target that is not in the graph");
    }
    search.starts.push_back(s);
    search.targets.push_back(t);
  }
  for (int i = 0; i < k; ++i) {
    search.dist_to_target.push_back(
        graph.bfs_all(search.targets[static_cast<size_t>(i)]));
  }

  std::vector<int32_t> start_state(static_cast<size_t>(k));
  std::vector<int32_t> goal_state(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    start_state[static_cast<size_t>(i)] =
        static_cast<int32_t>(search.starts[static_cast<size_t>(i)]);
    goal_state[static_cast<size_t>(i)] =
        static_cast<int32_t>(search.targets[static_cast<size_t>(i)]);
  }

  OptResult result;
  long long h0 = search.heuristic(start_state);
  if (h0 < 0) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  if (search.budget && h0 > *search.budget) {
    // The lower bound already exceeds the budget; the search would prune
    // every branch immediately.
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }

  auto worse = [&search](const QueueEntry& a, const QueueEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    return search.states[static_cast<size_t>(a.slot)] >
           search.states[static_cast<size_t>(b.slot)];
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, decltype(worse)>
      open(worse);

  int start_slot = search.slot_of(start_state);
  search.best_g[static_cast<size_t>(start_slot)] = 0;
  open.push(QueueEntry{h0, 0, start_slot});

  const auto t0 = std::chrono::steady_clock::now();
  auto timed_out = [&]() {
    auto dt = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    return dt > limits.time_cap_seconds;
  };

  std::vector<int32_t> new_pos(static_cast<size_t>(k));
  int goal_slot = -1;

  while (!open.empty()) {
    QueueEntry top = open.top();
    open.pop();
    if (top.g != search.best_g[static_cast<size_t>(top.slot)]) continue;
    const std::vector<int32_t> cur = search.states[static_cast<size_t>(
        top.slot)];  // copy: the arena may grow during expansion
    if (cur == goal_state) {
      goal_slot = top.slot;
      result.cost = top.g;
      break;
    }
    ++search.expanded;
    if ((search.expanded & 1023) == 0 && timed_out()) {
      result.status = SolveStatus::Timeout;
      result.expanded = search.expanded;
      return result;
    }

    // Recursive mover enumeration with early conflict rejection: robot i
    // either stays or steps to a neighbor; candidate positions are checked
    // against all previously assigned robots for vertex and swap conflicts.
    std::function<void(int, int)> assign = [&](int i, int movers) {
      if (i == k) {
        if (movers == 0) return;  // identity transition excluded
        long long g2 = top.g + movers;
        long long h2 = search.heuristic(new_pos);
        if (h2 < 0) return;
        long long f2 = g2 + h2;
        if (search.budget && f2 > *search.budget) {
          search.pruned_by_budget = true;
          return;
        }
        int slot = search.slot_of(new_pos);
        long long& g_ref = search.best_g[static_cast<size_t>(slot)];
        if (g_ref < 0 || g2 < g_ref) {
          g_ref = g2;
          search.parent[static_cast<size_t>(slot)] = top.slot;
          open.push(QueueEntry{f2, g2, slot});
        }
        return;
      }
      auto try_candidate = [&](int32_t cand, bool moved) {
        for (int j = 0; j < i; ++j) {
          if (new_pos[static_cast<size_t>(j)] == cand) return;  // vertex
          if (moved && new_pos[static_cast<size_t>(j)] ==
                           cur[static_cast<size_t>(i)] &&
              cur[static_cast<size_t>(j)] == cand) {
            return;  // swap
          }
        }
        new_pos[static_cast<size_t>(i)] = cand;
        assign(i + 1, movers + (moved ? 1 : 0));
      };
      try_candidate(cur[static_cast<size_t>(i)], false);
      for (int nb : graph.neighbors(cur[static_cast<size_t>(i)])) {
        try_candidate(static_cast<int32_t>(nb), true);
      }
    };
    assign(0, 0);
  }

  result.expanded = search.expanded;
  if (goal_slot < 0) {
    result.status = search.pruned_by_budget ? SolveStatus::BudgetExceeded
                                            : SolveStatus::Infeasible;
    return result;
  }

  // Reconstruct the witness schedule from parent links.
  std::vector<int> chain;
  for (int s = goal_slot; s >= 0; s = search.parent[static_cast<size_t>(s)]) {
    chain.push_back(s);
  }
  std::reverse(chain.begin(), chain.end());

  Schedule schedule;
  schedule.horizon = static_cast<long long>(chain.size()) - 1;
  for (int i = 0; i < k; ++i) {
    std::vector<NodeRef> route;
    route.reserve(chain.size());
    for (int s : chain) {
      route.push_back(graph.ref_of(
          search.states[static_cast<size_t>(s)][static_cast<size_t>(i)]));
    }
    schedule.routes.emplace_back(instance.robots[static_cast<size_t>(i)].id,
                                 std::move(route));
  }
  std::sort(schedule.routes.begin(), schedule.routes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  result.status = SolveStatus::Optimal;
  result.schedule = std::move(schedule);
  return result;
}

BudgetDecision decide_budget(const Instance& instance,
                             const SolveLimits& limits) {
  if (!instance.budget.has_value()) {
    raise(ErrorKind::InvalidInstance, "BudgetMissing",
          "budget decision requires an instance budget");
  }
  OptResult r = solve_optimal(instance, limits);
  if (r.status == SolveStatus::Timeout) {
    raise(ErrorKind::ResourceCap, "SolveTimeout",
          "budget decision timed out after " +
              std::to_string(limits.time_cap_seconds) + "s");
  }
  BudgetDecision d;
  if (r.status == SolveStatus::Optimal) {
    d.satisfiable = true;
    d.witness = std::move(r.schedule);
  }
  return d;
}

}  // namespace polymapf
