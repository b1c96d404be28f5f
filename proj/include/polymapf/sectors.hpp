#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polymapf/grid.hpp"
#include "polymapf/parallel.hpp"
#include "polymapf/simple_graph.hpp"

namespace polymapf {

// A port is an (anchor vertex, arrival axis) pair. Straight-arrival
// distances are measured toward the anchor with the final edge lying on the
// given axis.
struct Port {
  GridVertex anchor;
  Axis axis = Axis::Vertical;

  friend bool operator==(const Port&, const Port&) = default;
};

std::string port_str(const Port& p);

// Canonical port list for a terminal set: terminals in input order, each
// contributing its Vertical port then its Horizontal port.
std::vector<Port> ports_of(const std::vector<GridVertex>& terminals);

// Sentinel for "no qualifying path exists". With the bend-at-anchor
// convention below every vertex of a connected polygon has a finite value,
// so the sentinel is defensive; entries compare equal when grouping.
inline constexpr int kInfiniteBend = std::numeric_limits<int>::max();

// Minimum number of bends over all paths from each vertex to the port
// anchor, indexed by dense vertex id. A path whose final edge is
// perpendicular to the port axis pays one extra bend — the turn taken at
// the anchor itself. Equivalently, by layers: layer 0 is the maximal
// straight path through the anchor along the port axis, and layer i+1 adds
// every unreached vertex lying on a straight segment through a layer-i
// vertex. The anchor itself always gets 0 (the zero-length path).
std::vector<int> compute_bend_distances(const DiscretizedPolygon& polygon,
                                        const Port& port);

enum class SectorKind {
  SingleVertex,
  StraightPath,
  Histogram,
  Staircase,
  Rectangle,
};

const char* sector_kind_name(SectorKind kind);

// A baseline of a sector: a straight path inside the sector together with
// the covering direction. Every sector vertex is reachable from the path by
// a straight in-polygon path running in `direction` (zero length allowed).
// Qualifying pairs come from two sources, merged without duplicates:
//  - literal pairs, where the path's opposite-direction neighbors all lie
//    in one adjacent sector whose bend distance is exactly one smaller for
//    some port (when the whole opposite side faces missing cells, any
//    sector one bend closer on some port serves as the witness); and
//  - covering pairs, one candidate per port: the direction along which the
//    port's single-port region around the sector is entered from its tree
//    predecessor, paired with the sector's extremal run toward it (the
//    cells first met by in-polygon rays in that direction), kept when that
//    run is straight. Single vertices and straight paths are skipped here.
// Per covering direction at most one path can cover the sector, so the two
// sources agree whenever both produce a pair for the same direction.
struct Baseline {
  StraightPath path;
  Direction direction = Direction::Up;

  friend bool operator==(const Baseline&, const Baseline&) = default;
};

// Maximal connected region of equal bend-distance vectors.
struct Sector {
  int id = 0;
  // Dense vertex ids of the member vertices, ascending.
  std::vector<int> vertex_ids;
  // Bend-distance vector, one entry per port (kInfiniteBend possible).
  std::vector<int> bend_vector;
  // Shape classification; empty when the sector fits no class (surfaced via
  // classify_sector / reduction skip records rather than defaulted).
  std::optional<SectorKind> kind;
  std::vector<Baseline> baselines;
  bool clean = false;
};

// Sector decomposition of a polygon for a port list, with region adjacency.
class SectorGraph {
 public:
  SectorGraph(std::shared_ptr<const DiscretizedPolygon> polygon,
              std::vector<Port> ports, ExecPolicy policy);

  const DiscretizedPolygon& polygon() const { return *polygon_; }
  std::shared_ptr<const DiscretizedPolygon> polygon_ptr() const {
    return polygon_;
  }
  const std::vector<Port>& ports() const { return ports_; }

  int sector_count() const { return static_cast<int>(sectors_.size()); }
  const Sector& sector(int id) const;
  const std::vector<Sector>& sectors() const { return sectors_; }

  // Sector id containing the given dense vertex id / vertex.
  int sector_of(int vertex_id) const;
  int sector_of_vertex(GridVertex v) const;

  // Adjacent sector ids, ascending. Two sectors are adjacent when some grid
  // edge has one endpoint in each.
  const std::vector<int>& neighbors(int sector_id) const;
  bool adjacent(int a, int b) const;

  // The sector adjacency graph as a plain graph on sector ids.
  SimpleGraph skeleton() const;

 private:
  std::shared_ptr<const DiscretizedPolygon> polygon_;
  std::vector<Port> ports_;
  std::vector<Sector> sectors_;
  std::vector<int> sector_of_;  // per dense vertex id
  std::vector<std::vector<int>> adjacency_;

  friend SectorGraph compute_sectors_for_ports(
      std::shared_ptr<const DiscretizedPolygon>, std::vector<Port>,
      ExecPolicy);
};

// Full decomposition pipeline: bend distances for every port (the per-port
// maps are computed under `policy`), equal-vector regions in vertex index
// order, adjacency, then per-sector baselines, shape kinds, and clean flags.
SectorGraph compute_sectors(std::shared_ptr<const DiscretizedPolygon> polygon,
                            const std::vector<GridVertex>& terminals,
                            ExecPolicy policy = ExecPolicy::Parallel);

// Same pipeline for an explicit port list (used for prefix port sets).
// Clean flags are computed with the deduplicated port anchors standing in
// for terminals.
SectorGraph compute_sectors_for_ports(
    std::shared_ptr<const DiscretizedPolygon> polygon, std::vector<Port> ports,
    ExecPolicy policy = ExecPolicy::Parallel);

// Decomposition induced by a single port.
SectorGraph single_port_sector_graph(
    std::shared_ptr<const DiscretizedPolygon> polygon, const Port& port);

// All baselines of a sector as stored on it, deterministically ordered by
// covering direction (Up, Down, Left, Right) and then by path position.
std::vector<Baseline> find_baselines(const SectorGraph& graph, int sector_id);

// Shape class of a sector: SingleVertex / StraightPath by vertex shape;
// otherwise by the set of distinct baseline covering directions (a pair of
// opposite directions, however many classes: Rectangle, which must fill its
// bounding box; two orthogonal: Staircase; one class: Histogram). Throws
// UnclassifiableSector when no class fits.
SectorKind classify_sector(const SectorGraph& graph, int sector_id);

// Whether removing the sector from the adjacency graph leaves one component
// holding every terminal's sector, with every other component a tree that
// touches exactly one neighbor of the sector. The terminal component may
// keep cycles and several attachment points. Single-port graphs are all
// clean; a sector containing a terminal, or the only sector, is not.
bool is_clean(const SectorGraph& graph, int sector_id,
              const std::vector<GridVertex>& terminals);

// Staircase frame: the corner vertex where two orthogonal baselines meet,
// the union Q of the two maximal rays from the corner along the baseline
// directions, and the component C of the polygon minus Q containing the
// sector remainder (empty when the sector is inside Q).
struct StaircaseBase {
  GridVertex corner;
  std::vector<int> q_vertex_ids;  // ascending dense ids
  std::vector<int> c_vertex_ids;  // ascending dense ids
};

StaircaseBase staircase_base(const SectorGraph& graph, int sector_id);

}  // namespace polymapf
