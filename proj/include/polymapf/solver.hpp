#pragma once

#include <optional>

#include "polymapf/instance.hpp"

namespace polymapf {

// Resource limits for one search. The state cap bounds the number of
// distinct joint states ever stored (and the |V|^k state-space size up
// front); exceeding it raises Error(ResourceCap, "StateCapExceeded").
// Exceeding the wall-clock cap yields a Timeout result instead.
struct SolveLimits {
  long long state_cap = 20'000'000;
  double time_cap_seconds = 60.0;
};

enum class SolveStatus { Optimal, Infeasible, BudgetExceeded, Timeout };

const char* solve_status_name(SolveStatus status);

struct OptResult {
  SolveStatus status = SolveStatus::Infeasible;
  // Minimal total traveled length; -1 unless Optimal.
  long long cost = -1;
  std::optional<Schedule> schedule;  // witness, present when Optimal
  long long expanded = 0;            // joint states expanded (diagnostics)
};

// Optimal sum-of-costs search over joint position tuples. Transitions move
// any nonempty subset of robots one step each (resulting positions pairwise
// distinct, no two robots exchanging endpoints); a transition costs the
// number of moving robots. Waiting inside a transition is free, so
// cost-optimal search over position tuples (without a time coordinate) is
// exact. The heuristic is the sum of single-robot BFS distances to targets.
// When the instance carries a budget, branches whose lower bound exceeds it
// are pruned: an exhausted search then reports BudgetExceeded if anything
// was pruned and Infeasible otherwise.
OptResult solve_optimal(const Instance& instance, const SolveLimits& limits = {});

// Budget decision: true iff some schedule meets the instance budget, with a
// witness schedule when true. Requires the budget to be present. A Timeout
// from the underlying search raises Error(ResourceCap, "SolveTimeout").
struct BudgetDecision {
  bool satisfiable = false;
  std::optional<Schedule> witness;
};

BudgetDecision decide_budget(const Instance& instance,
                             const SolveLimits& limits = {});

}  // namespace polymapf
