#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polymapf/params.hpp"
#include "polymapf/reduced_graph.hpp"

namespace polymapf {

using ordered_json = nlohmann::ordered_json;

struct Robot {
  int id = 0;
  GridVertex start;
  GridVertex target;
  friend bool operator==(const Robot&, const Robot&) = default;
};

// A coordinated-motion-planning instance: a (possibly reduced) graph, k
// robots with pairwise-distinct starts and pairwise-distinct targets, an
// optional cost budget (absent = "find the optimum"), and parameters.
struct Instance {
  std::shared_ptr<const ReducedGraph> graph;
  std::vector<Robot> robots;
  std::optional<long long> budget;
  ParamSet params;

  int k() const { return static_cast<int>(robots.size()); }

  // Start and target vertices in robot order (start before target per
  // robot), with duplicates dropped keeping the first occurrence. This fixed
  // ordering also fixes the port sequence used by sector computations.
  std::vector<GridVertex> terminals() const;
};

// A timed joint plan: for each robot a sequence of horizon+1 positions.
// Routes are keyed by robot id and kept sorted by id.
struct Schedule {
  long long horizon = 0;
  std::vector<std::pair<int, std::vector<NodeRef>>> routes;

  const std::vector<NodeRef>* route_for(int robot_id) const;
};

enum class ViolationKind {
  BadStart,
  BadEnd,
  IllegalMove,
  VertexConflict,
  SwapConflict,
  OverBudget,
};

const char* violation_kind_name(ViolationKind kind);

struct ScheduleViolation {
  ViolationKind kind;
  long long time = 0;
  std::vector<int> robots;  // ids involved, ascending
};

struct Verdict {
  bool valid = false;
  long long cost = 0;
  std::optional<ScheduleViolation> violation;
};

// Checks starts, ends, per-step legality, vertex and swap conflicts, and the
// budget; reports the first violation in a fixed deterministic scan order.
// Throws Error(InvalidInstance, "ShapeMismatch") when the schedule does not
// have exactly one route of length horizon+1 per robot.
Verdict validate_schedule(const Instance& instance, const Schedule& schedule);

// --- JSON (canonical: fixed key order, so serialization is byte-stable) ---

// Instance text schema:
//   {"map": <inline ASCII ('.'/'#'/newlines) or file path>,
//    "robots": [{"id":0,"start":[x,y],"target":[x,y]}, ...],
//    "budget": <optional non-negative integer>,
//    "params": {"c": <number>, "lambda": <optional>, "mu": <optional>}}
// Reduced instances carry two extra members:
//   "removed": [[x,y], ...]          vertices deleted from the base map
//   "gadgets": [{"id":0,"a":[x,y],"b":[x,y],"interior_length":n}, ...]
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& instance);

// Schedule schema: {"horizon": q, "routes": {"<id>": [<pos>, ...], ...}}
// where <pos> is [x,y] for grid vertices and ["w",gadget_id,index] for weave
// vertices.
Schedule parse_schedule(const std::string& json_text);
std::string serialize_schedule(const Schedule& schedule);

ordered_json verdict_to_json(const Verdict& verdict);

// Shared low-level encoders.
ordered_json node_ref_to_json(const NodeRef& ref);
NodeRef node_ref_from_json(const ordered_json& j);
ordered_json mpz_to_json(const mpz_class& v);

}  // namespace polymapf
