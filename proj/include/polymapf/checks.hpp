#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polymapf/instance.hpp"
#include "polymapf/sectors.hpp"
#include "polymapf/simple_graph.hpp"

namespace polymapf {

// Rooted tree decomposition of a SimpleGraph: node i has parent[i] (-1 for
// the single root) and bag bags[i] (sorted vertex ids).
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<std::vector<int>> bags;

  int node_count() const { return static_cast<int>(bags.size()); }
  // Max bag size minus one; -1 for an empty decomposition.
  int width() const;
};

// Outcome of one property check: how many units were examined and, for each
// failure, a JSON record with enough detail to reproduce it.
struct PropertyReport {
  std::string name;
  long long population = 0;
  ordered_json violations = ordered_json::array();
  ordered_json extra = ordered_json::object();

  bool passed() const { return violations.empty(); }
};

ordered_json report_to_json(const PropertyReport& report);

// Checks vertex coverage, edge coverage, and the connected-occurrence
// property (the decomposition nodes holding any fixed vertex form a
// subtree); failures are returned as violation records. Structural defects
// of the decomposition itself (parent/bag size mismatch, out-of-range ids,
// not exactly one root, parent-link cycles) raise
// Error(InvariantViolation, "MalformedTree").
PropertyReport validate_tree_decomposition(const SimpleGraph& graph,
                                           const TreeDecomposition& td);

// Width upper bound via elimination orderings: runs min-fill and min-degree
// (ties broken toward the smaller vertex id) and keeps the better result
// (min-fill on equal widths). The returned decomposition always passes
// validate_tree_decomposition. Raises Error(InvalidArgument, "EmptyGraph")
// for a graph without nodes.
std::pair<int, TreeDecomposition> heuristic_treewidth_upper(
    const SimpleGraph& graph);

// Graph with an edge between every pair of distinct vertices at distance
// <= r in the input (r = 1 returns an equal graph). Requires r >= 1.
SimpleGraph graph_power(const SimpleGraph& graph, int r);

// Runs every structural property check against one polygon/terminal-set
// fixture and returns one report per property (fixed names, fixed order):
//
//   single-port-tree-and-layers: per port, the single-port sector graph is
//     a tree whose unique zero-distance sector is the maximal axis line
//     through the anchor, every finite positive-distance sector has exactly
//     one neighbor in the previous layer, and the heuristic width is 1 when
//     the graph has >= 2 sectors.
//   row-col-sector-bound: every maximal row/column meets <= 3*kappa sectors.
//   non-clean-neighbor-bound: every sector has <= 8 non-clean neighbors.
//   non-clean-split-bound: for each port-prefix step, each coarse sector
//     contains <= 6 non-clean refined sectors.
//   baseline-existence: every sector that is neither a single vertex nor a
//     straight path has >= 1 baseline.
//   via-baseline-shortest-paths: for such sectors, every vertex has a
//     shortest path from every terminal passing through a baseline vertex.
//   histogram-detour: visiting a histogram vertex at distance delta from the
//     baseline costs >= 2*delta over the direct terminal-to-terminal
//     distance.
//   staircase-separation: no staircase frame component contains a terminal.
//   sector-treewidth-bound: heuristic width of the sector graph is
//     <= 7^(kappa-1).
//   reduced-treewidth-bound: with terminals paired into robots (even count
//     required; otherwise population 0), the reduced graph's heuristic width
//     is <= 7^(28k+5) * q(k)^3 with q(k) = (k+1)(mu^2+mu).
//
// Violations are data; only malformed inputs raise.
std::vector<PropertyReport> run_lemma_suite(
    std::shared_ptr<const DiscretizedPolygon> polygon,
    const std::vector<GridVertex>& terminals, const ParamSet& params,
    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace polymapf
