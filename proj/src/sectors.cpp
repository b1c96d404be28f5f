#include "polymapf/sectors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <utility>

namespace polymapf {
namespace {

int dir_idx(Direction d) { return static_cast<int>(d); }

// Maximal in-polygon ray lengths: len[d][vertex id] = number of unit steps
// that stay inside the polygon when walking from the vertex in direction d.
struct RayTable {
  std::array<std::vector<int>, 4> len;
};

RayTable build_rays(const DiscretizedPolygon& poly) {
  const auto& vs = poly.vertices();
  const int n = poly.vertex_count();
  RayTable rays;
  for (auto& v : rays.len) v.assign(static_cast<size_t>(n), 0);
  auto fill = [&](int i, Direction d) {
    int j = poly.index_of(step(vs[static_cast<size_t>(i)], d));
    rays.len[static_cast<size_t>(dir_idx(d))][static_cast<size_t>(i)] =
        j < 0 ? 0
              : rays.len[static_cast<size_t>(dir_idx(d))][static_cast<size_t>(
                    j)] +
                    1;
  };
  // Index order is y ascending then x ascending, so Down/Left neighbors come
  // earlier and Up/Right neighbors later.
  for (int i = 0; i < n; ++i) {
    fill(i, Direction::Down);
    fill(i, Direction::Left);
  }
  for (int i = n - 1; i >= 0; --i) {
    fill(i, Direction::Up);
    fill(i, Direction::Right);
  }
  return rays;
}

int ray_len(const RayTable& rays, Direction d, int vid) {
  return rays.len[static_cast<size_t>(dir_idx(d))][static_cast<size_t>(vid)];
}

// Signed step count from `from` to `to` along direction d, or -1 when `to`
// is not on the d-ray line through `from`.
int steps_along(GridVertex from, GridVertex to, Direction d) {
  switch (d) {
    case Direction::Up:
      return from.x == to.x ? to.y - from.y : -1;
    case Direction::Down:
      return from.x == to.x ? from.y - to.y : -1;
    case Direction::Left:
      return from.y == to.y ? from.x - to.x : -1;
    case Direction::Right:
      return from.y == to.y ? to.x - from.x : -1;
  }
  return -1;
}

// Candidate baseline paths of one sector for covering direction d are
// exactly the maximal runs (perpendicular to d) of the sector's d-opposite
// fringe: vertices whose opposite-direction neighbor is absent or lies
// outside the sector. A valid baseline must cover the whole sector by
// straight d-paths and be adjacent on its opposite side to at most one
// sector. When that side has present neighbors, their sector must sit one
// bend closer to some port; when the whole side faces missing cells the
// witness is unconstrained, and any sector one bend closer on some port
// will do. Runs are the only possible candidates: any qualifying path must
// consist of fringe vertices, and each fringe vertex on the run's line can
// only be covered by itself, which forces the path to be the full run.
std::vector<Baseline> baselines_core(const DiscretizedPolygon& poly,
                                     const RayTable& rays,
                                     const std::vector<Sector>& sectors,
                                     const std::vector<int>& sector_of,
                                     int sid) {
  std::vector<Baseline> out;
  const Sector& sec = sectors[static_cast<size_t>(sid)];
  const int n = poly.vertex_count();
  std::vector<char> in_sec(static_cast<size_t>(n), 0);
  for (int id : sec.vertex_ids) in_sec[static_cast<size_t>(id)] = 1;

  for (Direction d : kDirections) {
    const Direction dbar = opposite(d);
    // Runs perpendicular to d: horizontal when d is vertical, else vertical.
    const bool horizontal_runs = axis_of(d) == Axis::Vertical;

    std::vector<GridVertex> fringe;
    for (int id : sec.vertex_ids) {
      GridVertex v = poly.vertex_at(id);
      int wi = poly.index_of(step(v, dbar));
      if (wi < 0 || !in_sec[static_cast<size_t>(wi)]) fringe.push_back(v);
    }
    if (horizontal_runs) {
      std::sort(fringe.begin(), fringe.end(),
                [](GridVertex a, GridVertex b) {
                  return a.y != b.y ? a.y < b.y : a.x < b.x;
                });
    } else {
      std::sort(fringe.begin(), fringe.end(),
                [](GridVertex a, GridVertex b) {
                  return a.x != b.x ? a.x < b.x : a.y < b.y;
                });
    }

    size_t i = 0;
    while (i < fringe.size()) {
      size_t j = i + 1;
      auto line_of = [&](GridVertex v) { return horizontal_runs ? v.y : v.x; };
      auto off_of = [&](GridVertex v) { return horizontal_runs ? v.x : v.y; };
      while (j < fringe.size() && line_of(fringe[j]) == line_of(fringe[i]) &&
             off_of(fringe[j]) == off_of(fringe[j - 1]) + 1) {
        ++j;
      }
      const GridVertex start = fringe[i];
      const int run_len = static_cast<int>(j - i) - 1;
      const int lo = off_of(start);
      const int hi = lo + run_len;
      const int line = line_of(start);

      // Coverage: every sector vertex must sit on a d-ray from the run.
      bool covered = true;
      for (int uid : sec.vertex_ids) {
        GridVertex u = poly.vertex_at(uid);
        GridVertex p = horizontal_runs ? GridVertex{u.x, line}
                                       : GridVertex{line, u.y};
        int u_off = off_of(u);
        if (u_off < lo || u_off > hi) {
          covered = false;
          break;
        }
        int delta = steps_along(p, u, d);
        if (delta < 0) {
          covered = false;
          break;
        }
        int pid = poly.index_of(p);
        if (pid < 0 || ray_len(rays, d, pid) < delta) {
          covered = false;
          break;
        }
      }
      if (!covered) {
        i = j;
        continue;
      }

      // Opposite-side neighbors, where present, must all lie in a single
      // adjacent sector.
      int sprime = -1;
      bool consistent = true;
      for (size_t t = i; t < j; ++t) {
        int wi = poly.index_of(step(fringe[t], dbar));
        if (wi < 0) continue;
        int sw = sector_of[static_cast<size_t>(wi)];
        if (sprime < 0) {
          sprime = sw;
        } else if (sprime != sw) {
          consistent = false;
          break;
        }
      }
      if (!consistent) {
        i = j;
        continue;
      }

      // Port condition: the witness sector is one bend closer to some port.
      // With present opposite-side neighbors the witness is their sector;
      // with none (the run hugs the polygon boundary) any sector qualifies.
      const auto& bs = sec.bend_vector;
      auto one_closer = [&](const std::vector<int>& bn) {
        for (size_t p = 0; p < bs.size(); ++p) {
          if (bs[p] != kInfiniteBend && bn[p] != kInfiniteBend &&
              bs[p] == bn[p] + 1) {
            return true;
          }
        }
        return false;
      };
      bool port_ok = false;
      if (sprime >= 0) {
        port_ok = one_closer(sectors[static_cast<size_t>(sprime)].bend_vector);
      } else {
        for (const Sector& other : sectors) {
          if (other.id != sid && one_closer(other.bend_vector)) {
            port_ok = true;
            break;
          }
        }
      }
      if (port_ok) {
        out.push_back(Baseline{
            StraightPath{start,
                         horizontal_runs ? Direction::Right : Direction::Up,
                         run_len},
            d});
      }
      i = j;
    }
  }
  return out;
}

// Covering directions of one port's single-port decomposition. Regions of
// equal single-port bend distance form a tree layered by that distance, and
// each non-root region is entered from its unique predecessor along one
// direction; that direction covers the region. Regions whose entry
// direction is not unique (a broken tree invariant) simply report none.
struct PortCover {
  std::vector<int> super_of;    // vertex id -> single-port region id
  std::vector<char> has_dir;    // region id -> entry direction known
  std::vector<Direction> dir;   // region id -> entry (covering) direction
};

PortCover port_cover(const DiscretizedPolygon& poly,
                     const std::vector<int>& bendj) {
  const int n = poly.vertex_count();
  PortCover pc;
  pc.super_of.assign(static_cast<size_t>(n), -1);
  int count = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (pc.super_of[static_cast<size_t>(seed)] >= 0) continue;
    const int id = count++;
    std::vector<int> stack = {seed};
    pc.super_of[static_cast<size_t>(seed)] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      GridVertex uv = poly.vertex_at(u);
      for (Direction d : kDirections) {
        int w = poly.index_of(step(uv, d));
        if (w < 0 || pc.super_of[static_cast<size_t>(w)] >= 0) continue;
        if (bendj[static_cast<size_t>(w)] == bendj[static_cast<size_t>(u)]) {
          pc.super_of[static_cast<size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  pc.has_dir.assign(static_cast<size_t>(count), 0);
  pc.dir.assign(static_cast<size_t>(count), Direction::Up);
  std::vector<char> mixed(static_cast<size_t>(count), 0);
  for (int u = 0; u < n; ++u) {
    GridVertex uv = poly.vertex_at(u);
    for (Direction d : kDirections) {
      int w = poly.index_of(step(uv, opposite(d)));
      if (w < 0) continue;
      if (bendj[static_cast<size_t>(w)] + 1 != bendj[static_cast<size_t>(u)]) {
        continue;
      }
      const size_t r = static_cast<size_t>(pc.super_of[static_cast<size_t>(u)]);
      if (!pc.has_dir[r]) {
        pc.has_dir[r] = 1;
        pc.dir[r] = d;
      } else if (pc.dir[r] != d) {
        mixed[r] = 1;
      }
    }
  }
  for (size_t r = 0; r < pc.has_dir.size(); ++r) {
    if (mixed[r]) pc.has_dir[r] = 0;
  }
  return pc;
}

// The vertices of a sector first met by the in-polygon rays running in
// direction b (equivalently: walking opposite to b from such a vertex
// leaves the polygon before meeting the sector again). These cells always
// cover the sector following b; they form a baseline candidate exactly when
// they line up as a straight path.
std::optional<StraightPath> extremal_run(const DiscretizedPolygon& poly,
                                         const std::vector<char>& in_sec,
                                         const std::vector<int>& vertex_ids,
                                         Direction b) {
  const Direction bbar = opposite(b);
  std::vector<GridVertex> cells;
  for (int id : vertex_ids) {
    GridVertex v = poly.vertex_at(id);
    bool extremal = true;
    GridVertex w = step(v, bbar);
    for (int wi = poly.index_of(w); wi >= 0; wi = poly.index_of(w)) {
      if (in_sec[static_cast<size_t>(wi)]) {
        extremal = false;
        break;
      }
      w = step(w, bbar);
    }
    if (extremal) cells.push_back(v);
  }
  if (cells.empty()) return std::nullopt;
  // Distinct rays are distinct lines, so a straight multi-cell result is
  // necessarily perpendicular to b; a single cell is stored the same way.
  const bool horizontal_run = axis_of(b) == Axis::Vertical;
  auto line_of = [&](GridVertex v) { return horizontal_run ? v.y : v.x; };
  auto off_of = [&](GridVertex v) { return horizontal_run ? v.x : v.y; };
  std::sort(cells.begin(), cells.end(), [&](GridVertex a, GridVertex b2) {
    return off_of(a) < off_of(b2);
  });
  for (size_t t = 0; t < cells.size(); ++t) {
    if (line_of(cells[t]) != line_of(cells.front())) return std::nullopt;
    if (t > 0 && off_of(cells[t]) != off_of(cells[t - 1]) + 1) {
      return std::nullopt;
    }
  }
  return StraightPath{cells.front(),
                      horizontal_run ? Direction::Right : Direction::Up,
                      static_cast<int>(cells.size()) - 1};
}

// One extra baseline candidate per port: the sector's extremal run toward
// the covering direction of the port's region around the sector, added when
// it is straight and not already found by the literal fringe-run search.
// Single vertices and straight paths keep the literal search alone, and the
// final list is ordered by covering direction and then path position.
void append_cover_baselines(const DiscretizedPolygon& poly,
                            const std::vector<PortCover>& covers,
                            Sector& sec) {
  const size_t m = sec.vertex_ids.size();
  bool trivial = m <= 1;
  if (!trivial) {
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (int id : sec.vertex_ids) {
      GridVertex v = poly.vertex_at(id);
      if (first) {
        min_x = max_x = v.x;
        min_y = max_y = v.y;
        first = false;
      } else {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
      }
    }
    const long long box = static_cast<long long>(max_x - min_x + 1) *
                          static_cast<long long>(max_y - min_y + 1);
    trivial = (min_x == max_x || min_y == max_y) &&
              static_cast<long long>(m) == box;
  }
  if (!trivial) {
    std::vector<char> in_sec(static_cast<size_t>(poly.vertex_count()), 0);
    for (int id : sec.vertex_ids) in_sec[static_cast<size_t>(id)] = 1;
    for (const PortCover& pc : covers) {
      const int r = pc.super_of[static_cast<size_t>(sec.vertex_ids.front())];
      if (!pc.has_dir[static_cast<size_t>(r)]) continue;
      const Direction b = pc.dir[static_cast<size_t>(r)];
      std::optional<StraightPath> run =
          extremal_run(poly, in_sec, sec.vertex_ids, b);
      if (!run) continue;
      Baseline cand{*run, b};
      if (std::find(sec.baselines.begin(), sec.baselines.end(), cand) ==
          sec.baselines.end()) {
        sec.baselines.push_back(cand);
      }
    }
  }
  std::sort(sec.baselines.begin(), sec.baselines.end(),
            [](const Baseline& a, const Baseline& b) {
              if (a.direction != b.direction) {
                return dir_idx(a.direction) < dir_idx(b.direction);
              }
              if (a.path.origin.y != b.path.origin.y) {
                return a.path.origin.y < b.path.origin.y;
              }
              if (a.path.origin.x != b.path.origin.x) {
                return a.path.origin.x < b.path.origin.x;
              }
              return a.path.length < b.path.length;
            });
}

// Shape-first classification; returns nullopt when the baseline direction
// classes fit no kind (zero distinct directions).
std::optional<SectorKind> classify_core(const DiscretizedPolygon& poly,
                                        const Sector& sec) {
  const size_t m = sec.vertex_ids.size();
  if (m == 1) return SectorKind::SingleVertex;

  int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (int id : sec.vertex_ids) {
    GridVertex v = poly.vertex_at(id);
    if (first) {
      min_x = max_x = v.x;
      min_y = max_y = v.y;
      first = false;
    } else {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
  }
  const long long box = static_cast<long long>(max_x - min_x + 1) *
                        static_cast<long long>(max_y - min_y + 1);
  if ((min_x == max_x || min_y == max_y) &&
      static_cast<long long>(m) == box) {
    return SectorKind::StraightPath;
  }

  std::set<Direction> classes;
  for (const Baseline& b : sec.baselines) classes.insert(b.direction);
  const bool opposed =
      (classes.count(Direction::Up) && classes.count(Direction::Down)) ||
      (classes.count(Direction::Left) && classes.count(Direction::Right));
  if (opposed) {
    // Two opposite covering directions flatten the sector from both sides
    // and force a full rectangular block; a counterexample is a broken
    // invariant, not a recoverable state. Three or more direction classes
    // always land here, since they always contain an opposite pair.
    if (static_cast<long long>(m) != box) {
      raise(ErrorKind::InvariantViolation, "RectangleNotFull",
            "sector " + std::to_string(sec.id) +
                " has two parallel baselines but does not fill its " +
                "bounding box");
    }
    return SectorKind::Rectangle;
  }
  if (classes.size() == 2) return SectorKind::Staircase;
  if (classes.size() == 1) return SectorKind::Histogram;
  return std::nullopt;
}

}  // namespace

std::string port_str(const Port& p) {
  return "((" + std::to_string(p.anchor.x) + "," + std::to_string(p.anchor.y) +
         ")," + axis_name(p.axis) + ")";
}

std::vector<Port> ports_of(const std::vector<GridVertex>& terminals) {
  std::vector<Port> ports;
  std::vector<GridVertex> seen;
  for (GridVertex t : terminals) {
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
    seen.push_back(t);
    ports.push_back(Port{t, Axis::Vertical});
    ports.push_back(Port{t, Axis::Horizontal});
  }
  return ports;
}

std::vector<int> compute_bend_distances(const DiscretizedPolygon& polygon,
                                        const Port& port) {
  const int n = polygon.vertex_count();
  const int anchor_id = polygon.index_of(port.anchor);
  if (anchor_id < 0) {
    raise(ErrorKind::InvalidArgument, "AnchorAbsent",
          "port anchor (" + std::to_string(port.anchor.x) + "," +
              std::to_string(port.anchor.y) + ") is not a polygon vertex");
  }

  // 0-1 BFS over (vertex, arrival direction) states, walking outward from
  // the anchor (reversing a path preserves its bend count). Leaving the
  // anchor along the port axis is free; leaving it perpendicular costs the
  // one bend taken at the anchor itself. Without that anchor turn, bend
  // levels could jump by two across a single grid edge next to the anchor
  // and the single-port sector graph would stop being a tree.
  std::vector<int> state(static_cast<size_t>(4 * n), kInfiniteBend);
  std::deque<std::pair<int, int>> dq;  // (bends, vertex id * 4 + direction)
  for (Direction d : kDirections) {
    int wid = polygon.index_of(step(port.anchor, d));
    if (wid < 0) continue;
    int cost = axis_of(d) == port.axis ? 0 : 1;
    int s = wid * 4 + dir_idx(d);
    if (state[static_cast<size_t>(s)] > cost) {
      state[static_cast<size_t>(s)] = cost;
      if (cost == 0) {
        dq.emplace_front(cost, s);
      } else {
        dq.emplace_back(cost, s);
      }
    }
  }
  while (!dq.empty()) {
    auto [bends, s] = dq.front();
    dq.pop_front();
    if (bends != state[static_cast<size_t>(s)]) continue;
    const int vid = s / 4;
    const Direction din = static_cast<Direction>(s % 4);
    const GridVertex v = polygon.vertex_at(vid);
    for (Direction dout : kDirections) {
      int wid = polygon.index_of(step(v, dout));
      if (wid < 0) continue;
      int cost = bends + (dout == din ? 0 : 1);
      int ns = wid * 4 + dir_idx(dout);
      if (cost < state[static_cast<size_t>(ns)]) {
        state[static_cast<size_t>(ns)] = cost;
        if (dout == din) {
          dq.emplace_front(cost, ns);
        } else {
          dq.emplace_back(cost, ns);
        }
      }
    }
  }

  std::vector<int> result(static_cast<size_t>(n), kInfiniteBend);
  for (int v = 0; v < n; ++v) {
    for (int d = 0; d < 4; ++d) {
      result[static_cast<size_t>(v)] =
          std::min(result[static_cast<size_t>(v)],
                   state[static_cast<size_t>(v * 4 + d)]);
    }
  }
  result[static_cast<size_t>(anchor_id)] = 0;  // zero-length path
  return result;
}

const char* sector_kind_name(SectorKind kind) {
  switch (kind) {
    case SectorKind::SingleVertex: return "SingleVertex";
    case SectorKind::StraightPath: return "StraightPath";
    case SectorKind::Histogram: return "Histogram";
    case SectorKind::Staircase: return "Staircase";
    case SectorKind::Rectangle: return "Rectangle";
  }
  return "?";
}

SectorGraph::SectorGraph(std::shared_ptr<const DiscretizedPolygon> polygon,
                         std::vector<Port> ports, ExecPolicy policy)
    : polygon_(std::move(polygon)), ports_(std::move(ports)) {
  if (!polygon_) {
    raise(ErrorKind::InvalidArgument, "NullPolygon",
          "sector graph requires a polygon");
  }
  if (ports_.empty()) {
    raise(ErrorKind::InvalidArgument, "NoPorts",
          "sector graph requires at least one port");
  }
  const int n = polygon_->vertex_count();
  const int np = static_cast<int>(ports_.size());

  // Per-port bend-distance maps; each iteration fills its own slot, so the
  // merged result is independent of the execution policy.
  std::vector<std::vector<int>> bend(static_cast<size_t>(np));
  parallel_for(np, policy, [&](int i) {
    bend[static_cast<size_t>(i)] =
        compute_bend_distances(*polygon_, ports_[static_cast<size_t>(i)]);
  });

  // Regions of equal bend vectors, discovered in vertex index order.
  sector_of_.assign(static_cast<size_t>(n), -1);
  auto same_vec = [&](int u, int v) {
    for (int p = 0; p < np; ++p) {
      if (bend[static_cast<size_t>(p)][static_cast<size_t>(u)] !=
          bend[static_cast<size_t>(p)][static_cast<size_t>(v)]) {
        return false;
      }
    }
    return true;
  };
  for (int seed = 0; seed < n; ++seed) {
    if (sector_of_[static_cast<size_t>(seed)] >= 0) continue;
    const int id = static_cast<int>(sectors_.size());
    Sector sec;
    sec.id = id;
    sec.bend_vector.reserve(static_cast<size_t>(np));
    for (int p = 0; p < np; ++p) {
      sec.bend_vector.push_back(
          bend[static_cast<size_t>(p)][static_cast<size_t>(seed)]);
    }
    std::vector<int> stack = {seed};
    sector_of_[static_cast<size_t>(seed)] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      sec.vertex_ids.push_back(u);
      GridVertex uv = polygon_->vertex_at(u);
      for (Direction d : kDirections) {
        int w = polygon_->index_of(step(uv, d));
        if (w < 0 || sector_of_[static_cast<size_t>(w)] >= 0) continue;
        if (same_vec(seed, w)) {
          sector_of_[static_cast<size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(sec.vertex_ids.begin(), sec.vertex_ids.end());
    sectors_.push_back(std::move(sec));
  }

  // Region adjacency from grid edges.
  std::vector<std::set<int>> adj(sectors_.size());
  for (int u = 0; u < n; ++u) {
    GridVertex uv = polygon_->vertex_at(u);
    for (Direction d : {Direction::Up, Direction::Right}) {
      int w = polygon_->index_of(step(uv, d));
      if (w < 0) continue;
      int su = sector_of_[static_cast<size_t>(u)];
      int sw = sector_of_[static_cast<size_t>(w)];
      if (su != sw) {
        adj[static_cast<size_t>(su)].insert(sw);
        adj[static_cast<size_t>(sw)].insert(su);
      }
    }
  }
  adjacency_.resize(sectors_.size());
  for (size_t s = 0; s < sectors_.size(); ++s) {
    adjacency_[s].assign(adj[s].begin(), adj[s].end());
  }

  // Baselines, shape kinds, and clean flags per sector. Iterations touch
  // disjoint sectors, so the policy does not affect the outcome. Baselines
  // come from two sources merged without duplicates: the literal fringe-run
  // search, and one candidate per port from that port's covering direction
  // around the sector.
  const RayTable rays = build_rays(*polygon_);
  std::vector<PortCover> covers(static_cast<size_t>(np));
  parallel_for(np, policy, [&](int j) {
    covers[static_cast<size_t>(j)] =
        port_cover(*polygon_, bend[static_cast<size_t>(j)]);
  });
  std::vector<GridVertex> anchors;
  for (const Port& p : ports_) {
    if (std::find(anchors.begin(), anchors.end(), p.anchor) == anchors.end()) {
      anchors.push_back(p.anchor);
    }
  }
  parallel_for(static_cast<int>(sectors_.size()), policy, [&](int s) {
    Sector& sec = sectors_[static_cast<size_t>(s)];
    sec.baselines = baselines_core(*polygon_, rays, sectors_, sector_of_, s);
    append_cover_baselines(*polygon_, covers, sec);
    sec.kind = classify_core(*polygon_, sec);
    sec.clean = is_clean(*this, s, anchors);
  });
}

const Sector& SectorGraph::sector(int id) const {
  if (id < 0 || id >= sector_count()) {
    raise(ErrorKind::InvalidArgument, "BadSectorId",
          "sector id " + std::to_string(id) + " out of range");
  }
  return sectors_[static_cast<size_t>(id)];
}

int SectorGraph::sector_of(int vertex_id) const {
  if (vertex_id < 0 || vertex_id >= polygon_->vertex_count()) {
    raise(ErrorKind::InvalidArgument, "BadVertexId",
          "vertex id " + std::to_string(vertex_id) + " out of range");
  }
  return sector_of_[static_cast<size_t>(vertex_id)];
}

int SectorGraph::sector_of_vertex(GridVertex v) const {
  int id = polygon_->index_of(v);
  if (id < 0) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
              ") is not a polygon vertex");
  }
  return sector_of_[static_cast<size_t>(id)];
}

const std::vector<int>& SectorGraph::neighbors(int sector_id) const {
  sector(sector_id);  // range check
  return adjacency_[static_cast<size_t>(sector_id)];
}

bool SectorGraph::adjacent(int a, int b) const {
  const auto& nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

SimpleGraph SectorGraph::skeleton() const {
  SimpleGraph g(sector_count());
  for (int s = 0; s < sector_count(); ++s) {
    for (int t : adjacency_[static_cast<size_t>(s)]) {
      if (t > s) g.add_edge(s, t);
    }
  }
  return g;
}

SectorGraph compute_sectors(std::shared_ptr<const DiscretizedPolygon> polygon,
                            const std::vector<GridVertex>& terminals,
                            ExecPolicy policy) {
  return SectorGraph(std::move(polygon), ports_of(terminals), policy);
}

SectorGraph compute_sectors_for_ports(
    std::shared_ptr<const DiscretizedPolygon> polygon, std::vector<Port> ports,
    ExecPolicy policy) {
  return SectorGraph(std::move(polygon), std::move(ports), policy);
}

SectorGraph single_port_sector_graph(
    std::shared_ptr<const DiscretizedPolygon> polygon, const Port& port) {
  return SectorGraph(std::move(polygon), std::vector<Port>{port},
                     ExecPolicy::Serial);
}

std::vector<Baseline> find_baselines(const SectorGraph& graph, int sector_id) {
  return graph.sector(sector_id).baselines;
}

SectorKind classify_sector(const SectorGraph& graph, int sector_id) {
  const Sector& sec = graph.sector(sector_id);
  if (!sec.kind.has_value()) {
    std::set<Direction> classes;
    for (const auto& b : sec.baselines) classes.insert(b.direction);
    raise(ErrorKind::InvariantViolation, "UnclassifiableSector",
          "sector " + std::to_string(sector_id) +
              " fits no shape class (" + std::to_string(classes.size()) +
              " baseline direction classes)");
  }
  return *sec.kind;
}

bool is_clean(const SectorGraph& graph, int sector_id,
              const std::vector<GridVertex>& terminals) {
  graph.sector(sector_id);  // range check
  if (graph.ports().size() <= 1) return true;
  const int ns = graph.sector_count();
  if (ns <= 1) return false;

  // Components of the adjacency graph minus the sector, in discovery order.
  std::vector<int> comp(static_cast<size_t>(ns), -1);
  int comp_count = 0;
  for (int seed = 0; seed < ns; ++seed) {
    if (seed == sector_id || comp[static_cast<size_t>(seed)] >= 0) continue;
    const int c = comp_count++;
    std::vector<int> stack = {seed};
    comp[static_cast<size_t>(seed)] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : graph.neighbors(u)) {
        if (w == sector_id || comp[static_cast<size_t>(w)] >= 0) continue;
        comp[static_cast<size_t>(w)] = c;
        stack.push_back(w);
      }
    }
  }

  // All terminal sectors must share one component (and none may be the
  // removed sector itself).
  int c_main = -1;
  bool have_anchor = false;
  for (GridVertex t : terminals) {
    int s = graph.sector_of_vertex(t);
    if (s == sector_id) return false;
    int c = comp[static_cast<size_t>(s)];
    if (!have_anchor) {
      c_main = c;
      have_anchor = true;
    } else if (c != c_main) {
      return false;
    }
  }

  // Tree check per component (components are connected by construction, so
  // tree <=> edges == nodes - 1), plus neighbor counts of the sector.
  std::vector<int> nodes(static_cast<size_t>(comp_count), 0);
  std::vector<long long> half_edges(static_cast<size_t>(comp_count), 0);
  for (int s = 0; s < ns; ++s) {
    if (s == sector_id) continue;
    int c = comp[static_cast<size_t>(s)];
    nodes[static_cast<size_t>(c)]++;
    for (int w : graph.neighbors(s)) {
      if (w != sector_id) half_edges[static_cast<size_t>(c)]++;
    }
  }
  std::vector<int> sector_neighbors(static_cast<size_t>(comp_count), 0);
  for (int w : graph.neighbors(sector_id)) {
    sector_neighbors[static_cast<size_t>(comp[static_cast<size_t>(w)])]++;
  }

  // Every component other than the one holding the terminals must be a tree
  // hanging off exactly one neighbor of the sector; the terminal component
  // itself may keep cycles and several attachment points.
  int loose = -1;
  for (int c = 0; c < comp_count; ++c) {
    bool tree = half_edges[static_cast<size_t>(c)] / 2 ==
                static_cast<long long>(nodes[static_cast<size_t>(c)]) - 1;
    if (tree && sector_neighbors[static_cast<size_t>(c)] == 1) continue;
    if (loose >= 0) return false;  // two components break the side rules
    loose = c;
  }
  if (loose >= 0 && have_anchor) return loose == c_main;
  return true;  // no anchors: any component may serve as the main one
}

StaircaseBase staircase_base(const SectorGraph& graph, int sector_id) {
  const Sector& sec = graph.sector(sector_id);
  if (!sec.kind.has_value() || *sec.kind != SectorKind::Staircase) {
    raise(ErrorKind::InvalidArgument, "NotStaircase",
          "sector " + std::to_string(sector_id) + " is not a staircase");
  }
  const DiscretizedPolygon& poly = graph.polygon();

  std::vector<const Baseline*> vertical, horizontal;
  for (const Baseline& b : sec.baselines) {
    (axis_of(b.direction) == Axis::Vertical ? vertical : horizontal)
        .push_back(&b);
  }

  // First vertical/horizontal baseline pair sharing a vertex, in stored
  // order, gives the corner.
  const Baseline* b1 = nullptr;
  const Baseline* b2 = nullptr;
  GridVertex corner{};
  bool found = false;
  for (const Baseline* pv : vertical) {
    std::vector<GridVertex> pv_vertices = pv->path.vertices();
    for (const Baseline* ph : horizontal) {
      for (GridVertex v : pv_vertices) {
        if (ph->path.contains(v)) {
          b1 = pv;
          b2 = ph;
          corner = v;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) break;
  }
  if (!found) {
    raise(ErrorKind::InvariantViolation, "BaselinesDisjoint",
          "staircase sector " + std::to_string(sector_id) +
              " has no intersecting orthogonal baseline pair");
  }

  StaircaseBase base;
  base.corner = corner;
  std::set<int> q_ids;
  for (GridVertex v : poly.maximal_straight_path(corner, b1->direction)
                          .vertices()) {
    q_ids.insert(poly.index_of(v));
  }
  for (GridVertex v : poly.maximal_straight_path(corner, b2->direction)
                          .vertices()) {
    q_ids.insert(poly.index_of(v));
  }
  base.q_vertex_ids.assign(q_ids.begin(), q_ids.end());

  // Component of the polygon minus Q containing the sector remainder.
  std::vector<int> rest;
  for (int id : sec.vertex_ids) {
    if (!q_ids.count(id)) rest.push_back(id);
  }
  if (rest.empty()) return base;  // sector inside Q: C is empty

  const int n = poly.vertex_count();
  std::vector<char> visited(static_cast<size_t>(n), 0);
  std::vector<int> stack = {rest.front()};
  visited[static_cast<size_t>(rest.front())] = 1;
  std::vector<int> comp_ids;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    comp_ids.push_back(u);
    GridVertex uv = poly.vertex_at(u);
    for (Direction d : kDirections) {
      int w = poly.index_of(step(uv, d));
      if (w < 0 || visited[static_cast<size_t>(w)] || q_ids.count(w)) continue;
      visited[static_cast<size_t>(w)] = 1;
      stack.push_back(w);
    }
  }
  for (int id : rest) {
    if (!visited[static_cast<size_t>(id)]) {
      raise(ErrorKind::InvariantViolation, "StaircaseSplit",
            "staircase sector " + std::to_string(sector_id) +
                " spans multiple components once its frame is removed");
    }
  }
  std::sort(comp_ids.begin(), comp_ids.end());
  base.c_vertex_ids = std::move(comp_ids);
  return base;
}

}  // namespace polymapf
