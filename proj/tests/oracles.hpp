#pragma once

// Independent re-derivations of library quantities, used only by tests.
// Each oracle is written directly from the defining statement of the
// quantity it checks and intentionally shares no code with src/; the
// implementations favour exhaustive enumeration over cleverness.

#include <vector>

#include "polymapf/grid.hpp"
#include "polymapf/instance.hpp"
#include "polymapf/sectors.hpp"
#include "polymapf/simple_graph.hpp"

namespace polymapf::oracle {

// Face-counting hole check for a connected cell set: by Euler's formula a
// connected induced grid graph has E - V + 1 bounded faces, and the polygon
// is hole-free exactly when every bounded face is a unit square, i.e. when
// that count equals the number of fully-present 2x2 blocks. Takes a raw
// vertex set (which may describe a holed region the polygon type rejects);
// the set must be nonempty and 4-connected.
bool hole_free_by_faces(const std::vector<GridVertex>& cells);

// Bend distance by exhaustive enumeration of simple paths: the minimum over
// all simple v-to-anchor paths of the number of bends, counting one extra
// bend when the path's final edge does not lie on the port axis (the turn
// at the anchor itself). The anchor scores 0 via the zero-length path.
// Exponential; only for small polygons. `cap` prunes paths whose bend count
// already exceeds it; returns kInfiniteBend if no path scores <= cap.
int bend_distance_exhaustive(const DiscretizedPolygon& polygon,
                             const Port& port, GridVertex v, int cap = 16);

// Bend distances for all vertices by the layered closure: layer 0 is the
// maximal straight path through the anchor along the port axis; layer i+1
// adds every unreached vertex lying on a straight in-polygon segment
// through a layer-i vertex. Iterates to a fixpoint over plain vertex sets.
std::vector<int> bend_distances_closure(const DiscretizedPolygon& polygon,
                                        const Port& port);

// Sector partition from scratch: closure bend vectors for every port, then
// connected components of equal-vector vertices via union-find. Returns a
// per-vertex label vector; labels are renumbered in order of each
// component's smallest vertex id (matching sector id order).
std::vector<int> sector_partition(const DiscretizedPolygon& polygon,
                                  const std::vector<Port>& ports);

// All baselines of a sector, re-derived from scratch as the union of:
//  - literal pairs, by checking every straight path contained in the
//    sector: full coverage of the sector by straight rays in the covering
//    direction, all present far-side neighbors in one other sector that is
//    one bend closer on some port (with a fully absent far side, any sector
//    one bend closer qualifies as the witness); and
//  - covering pairs, one candidate per port from the closure distances:
//    the unique direction along which the equal-distance region around the
//    sector is entered, paired with the sector cells first met by rays in
//    that direction, kept when they form a straight path (skipped for
//    single vertices and straight paths).
std::vector<Baseline> baselines_by_definition(const SectorGraph& graph,
                                              int sector_id);

// Exact treewidth by elimination-order subset dynamic programming
// (supports up to 16 vertices).
int exact_treewidth(const SimpleGraph& graph);

// Optimal total-moves cost by plain Dijkstra over joint robot
// configurations, with vertex- and swap-conflict legality. Returns -1 when
// no conflict-free schedule exists. Tiny instances only; throws
// ResourceCap("OracleStateCap") beyond `state_cap` settled configurations.
long long joint_dijkstra_cost(const ReducedGraph& graph,
                              const std::vector<Robot>& robots,
                              long long state_cap = 4'000'000);

}  // namespace polymapf::oracle
