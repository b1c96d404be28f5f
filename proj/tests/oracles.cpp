#include "oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "polymapf/errors.hpp"

namespace polymapf::oracle {

namespace {

struct CellSet {
  std::set<std::pair<int, int>> cells;
  bool has(int x, int y) const { return cells.count({x, y}) != 0; }
};

CellSet make_set(const std::vector<GridVertex>& cells) {
  CellSet s;
  for (GridVertex v : cells) s.cells.insert({v.x, v.y});
  return s;
}

}  // namespace

bool hole_free_by_faces(const std::vector<GridVertex>& cells) {
  if (cells.empty()) {
    raise(ErrorKind::InvalidArgument, "EmptyCellSet",
          "face-counting oracle needs a nonempty cell set");
  }
  const CellSet s = make_set(cells);
  const long long v = static_cast<long long>(s.cells.size());

  // Connectivity (the Euler argument needs exactly one component).
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> stack = {*s.cells.begin()};
  seen.insert(stack.back());
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const std::pair<int, int> nbrs[4] = {
        {x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    for (auto nb : nbrs) {
      if (s.cells.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        stack.push_back(nb);
      }
    }
  }
  if (seen.size() != s.cells.size()) {
    raise(ErrorKind::InvalidArgument, "DisconnectedCellSet",
          "face-counting oracle needs a connected cell set");
  }

  long long edges = 0;
  long long unit_squares = 0;
  for (auto [x, y] : s.cells) {
    if (s.has(x + 1, y)) ++edges;
    if (s.has(x, y + 1)) ++edges;
    if (s.has(x + 1, y) && s.has(x, y + 1) && s.has(x + 1, y + 1)) {
      ++unit_squares;
    }
  }
  const long long bounded_faces = edges - v + 1;
  return bounded_faces == unit_squares;
}

int bend_distance_exhaustive(const DiscretizedPolygon& polygon,
                             const Port& port, GridVertex v, int cap) {
  const int anchor_id = polygon.index_of(port.anchor);
  if (anchor_id < 0) {
    raise(ErrorKind::InvalidArgument, "AnchorAbsent",
          "exhaustive bend oracle: anchor is not a polygon vertex");
  }
  const int start_id = polygon.index_of(v);
  if (start_id < 0) {
    raise(ErrorKind::InvalidArgument, "VertexAbsent",
          "exhaustive bend oracle: query vertex is not a polygon vertex");
  }
  if (start_id == anchor_id) return 0;

  int best = kInfiniteBend;
  std::vector<char> visited(static_cast<size_t>(polygon.vertex_count()), 0);

  // Depth-first enumeration of simple paths from v. A path scores its bend
  // count plus one if its final edge into the anchor is perpendicular to
  // the port axis (the turn at the anchor itself).
  std::function<void(int, std::optional<Direction>, int)> walk =
      [&](int uid, std::optional<Direction> arrived_by, int bends) {
        visited[static_cast<size_t>(uid)] = 1;
        const GridVertex u = polygon.vertex_at(uid);
        for (Direction dir : kDirections) {
          const int wid = polygon.index_of(step(u, dir));
          if (wid < 0) continue;
          const int next_bends =
              bends + (arrived_by.has_value() && *arrived_by != dir ? 1 : 0);
          if (next_bends > cap || next_bends >= best) continue;
          if (wid == anchor_id) {
            const int score =
                next_bends + (axis_of(dir) == port.axis ? 0 : 1);
            best = std::min(best, score);
            continue;  // simple paths end at the anchor
          }
          if (visited[static_cast<size_t>(wid)]) continue;
          walk(wid, dir, next_bends);
        }
        visited[static_cast<size_t>(uid)] = 0;
      };
  walk(start_id, std::nullopt, 0);
  return best;
}

std::vector<int> bend_distances_closure(const DiscretizedPolygon& polygon,
                                        const Port& port) {
  const int anchor_id = polygon.index_of(port.anchor);
  if (anchor_id < 0) {
    raise(ErrorKind::InvalidArgument, "AnchorAbsent",
          "closure bend oracle: anchor is not a polygon vertex");
  }
  const int n = polygon.vertex_count();
  std::vector<int> level(static_cast<size_t>(n), kInfiniteBend);

  // Layer 0: the maximal straight path through the anchor along the axis.
  level[static_cast<size_t>(anchor_id)] = 0;
  for (Direction d : directions_of(port.axis)) {
    GridVertex w = step(port.anchor, d);
    while (polygon.index_of(w) >= 0) {
      level[static_cast<size_t>(polygon.index_of(w))] = 0;
      w = step(w, d);
    }
  }

  // Layer i+1: every unreached vertex on a straight in-polygon segment
  // through a layer-i vertex. The segment through a vertex keeps running
  // over already-labeled vertices as long as cells are present.
  int layer = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int uid = 0; uid < n; ++uid) {
      if (level[static_cast<size_t>(uid)] != layer) continue;
      const GridVertex u = polygon.vertex_at(uid);
      for (Direction d : kDirections) {
        GridVertex w = step(u, d);
        int wid = polygon.index_of(w);
        while (wid >= 0) {
          if (level[static_cast<size_t>(wid)] == kInfiniteBend) {
            level[static_cast<size_t>(wid)] = layer + 1;
            changed = true;
          }
          w = step(w, d);
          wid = polygon.index_of(w);
        }
      }
    }
    ++layer;
  }
  return level;
}

std::vector<int> sector_partition(const DiscretizedPolygon& polygon,
                                  const std::vector<Port>& ports) {
  const int n = polygon.vertex_count();
  std::vector<std::vector<int>> bends;
  bends.reserve(ports.size());
  for (const Port& p : ports) bends.push_back(bend_distances_closure(polygon, p));

  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto same_vector = [&](int a, int b) {
    for (const auto& bv : bends) {
      if (bv[static_cast<size_t>(a)] != bv[static_cast<size_t>(b)]) return false;
    }
    return true;
  };
  for (int uid = 0; uid < n; ++uid) {
    const GridVertex u = polygon.vertex_at(uid);
    for (Direction d : {Direction::Right, Direction::Up}) {
      const int wid = polygon.index_of(step(u, d));
      if (wid < 0 || !same_vector(uid, wid)) continue;
      parent[static_cast<size_t>(find(uid))] = find(wid);
    }
  }

  std::vector<int> label(static_cast<size_t>(n), -1);
  int next = 0;
  for (int uid = 0; uid < n; ++uid) {
    const int root = find(uid);
    if (label[static_cast<size_t>(root)] < 0) {
      label[static_cast<size_t>(root)] = next++;
    }
    label[static_cast<size_t>(uid)] = label[static_cast<size_t>(root)];
  }
  return label;
}

std::vector<Baseline> baselines_by_definition(const SectorGraph& graph,
                                              int sector_id) {
  const DiscretizedPolygon& poly = graph.polygon();
  const Sector& sec = graph.sector(sector_id);
  std::set<std::pair<int, int>> members;
  for (int id : sec.vertex_ids) {
    GridVertex v = poly.vertex_at(id);
    members.insert({v.x, v.y});
  }
  auto in_sector = [&](GridVertex v) { return members.count({v.x, v.y}) != 0; };

  std::vector<Baseline> out;
  // Every straight path contained in the sector, in canonical orientation
  // (origin at the low end, direction Right or Up).
  for (int oid : sec.vertex_ids) {
    const GridVertex origin = poly.vertex_at(oid);
    for (Direction path_dir : {Direction::Right, Direction::Up}) {
      int max_len = 0;
      while ([&] {
        GridVertex probe = origin;
        for (int t = 0; t <= max_len; ++t) probe = step(probe, path_dir);
        return in_sector(probe);
      }()) {
        ++max_len;
      }
      for (int len = 0; len <= max_len; ++len) {
        const StraightPath path{origin, path_dir, len};
        for (Direction d : kDirections) {
          // A zero-length path is canonicalized like a run perpendicular to
          // d; skip the redundant orientation.
          if (len == 0 &&
              path_dir != (axis_of(d) == Axis::Vertical ? Direction::Right
                                                        : Direction::Up)) {
            continue;
          }
          // Coverage: every sector vertex on a straight in-polygon ray from
          // some path vertex along d (zero length allowed).
          std::set<std::pair<int, int>> covered;
          for (GridVertex p : path.vertices()) {
            GridVertex w = p;
            while (poly.index_of(w) >= 0) {
              if (in_sector(w)) covered.insert({w.x, w.y});
              w = step(w, d);
            }
          }
          if (covered.size() != members.size()) continue;

          // Far side: at least one opposite-direction neighbor, all in one
          // sector, which sits one bend closer on some port.
          const Direction dbar = opposite(d);
          int sprime = -1;
          bool single = true;
          for (GridVertex p : path.vertices()) {
            const int wid = poly.index_of(step(p, dbar));
            if (wid < 0) continue;
            const int sw = graph.sector_of(wid);
            if (sprime < 0) {
              sprime = sw;
            } else if (sprime != sw) {
              single = false;
              break;
            }
          }
          if (sprime == sector_id || !single) continue;
          const auto& bs = sec.bend_vector;
          auto one_closer = [&](const std::vector<int>& bn) {
            for (size_t pi = 0; pi < bs.size(); ++pi) {
              if (bs[pi] != kInfiniteBend && bn[pi] != kInfiniteBend &&
                  bs[pi] == bn[pi] + 1) {
                return true;
              }
            }
            return false;
          };
          bool ok = false;
          if (sprime >= 0) {
            ok = one_closer(graph.sector(sprime).bend_vector);
          } else {
            // Whole far side absent: the witness clause is vacuous, any
            // sector one bend closer on some port will do.
            for (const Sector& other : graph.sectors()) {
              if (other.id != sector_id && one_closer(other.bend_vector)) {
                ok = true;
                break;
              }
            }
          }
          if (ok) out.push_back(Baseline{path, d});
        }
      }
    }
  }

  // Covering pairs, one candidate per port: the port's closure distances
  // split the polygon into equal-distance regions; the region around the
  // sector is entered from its predecessor along a unique direction b, and
  // the sector cells first met by in-polygon b-rays form the candidate,
  // kept when they line up straight. Single vertices and straight paths
  // keep the literal pairs alone.
  bool trivial_shape = members.size() <= 1;
  if (!trivial_shape) {
    int minx = std::numeric_limits<int>::max(), maxx = std::numeric_limits<int>::min();
    int miny = minx, maxy = maxx;
    for (const auto& [x, y] : members) {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
    const long long box = static_cast<long long>(maxx - minx + 1) *
                          static_cast<long long>(maxy - miny + 1);
    trivial_shape = (minx == maxx || miny == maxy) &&
                    static_cast<long long>(members.size()) == box;
  }
  if (!trivial_shape) {
    const int n = poly.vertex_count();
    for (const Port& port : graph.ports()) {
      const std::vector<int> lev = bend_distances_closure(poly, port);
      // Region of equal closure distance around the sector.
      std::vector<char> in_region(static_cast<size_t>(n), 0);
      std::vector<int> stack = {sec.vertex_ids.front()};
      in_region[static_cast<size_t>(sec.vertex_ids.front())] = 1;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        const GridVertex uv = poly.vertex_at(u);
        for (Direction d : kDirections) {
          const int w = poly.index_of(step(uv, d));
          if (w < 0 || in_region[static_cast<size_t>(w)]) continue;
          if (lev[static_cast<size_t>(w)] == lev[static_cast<size_t>(u)]) {
            in_region[static_cast<size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      // Entry direction: the direction along which region cells are reached
      // from cells one closure layer closer; must be unique.
      std::set<Direction> entry;
      for (int u = 0; u < n; ++u) {
        if (!in_region[static_cast<size_t>(u)]) continue;
        const GridVertex uv = poly.vertex_at(u);
        for (Direction d : kDirections) {
          const int w = poly.index_of(step(uv, opposite(d)));
          if (w < 0) continue;
          if (lev[static_cast<size_t>(w)] != kInfiniteBend &&
              lev[static_cast<size_t>(w)] + 1 == lev[static_cast<size_t>(u)]) {
            entry.insert(d);
          }
        }
      }
      if (entry.size() != 1) continue;
      const Direction b = *entry.begin();
      // Sector cells whose backward walk leaves the polygon before meeting
      // the sector again.
      std::vector<GridVertex> firsts;
      for (const auto& [x, y] : members) {
        GridVertex w = step(GridVertex{x, y}, opposite(b));
        bool first = true;
        while (poly.index_of(w) >= 0) {
          if (in_sector(w)) {
            first = false;
            break;
          }
          w = step(w, opposite(b));
        }
        if (first) firsts.push_back(GridVertex{x, y});
      }
      const bool horizontal = axis_of(b) == Axis::Vertical;
      std::sort(firsts.begin(), firsts.end(),
                [&](GridVertex a, GridVertex c) {
                  return (horizontal ? a.x : a.y) < (horizontal ? c.x : c.y);
                });
      bool straight = !firsts.empty();
      for (size_t t = 0; t + 1 < firsts.size() && straight; ++t) {
        if (horizontal) {
          straight = firsts[t + 1].y == firsts[t].y &&
                     firsts[t + 1].x == firsts[t].x + 1;
        } else {
          straight = firsts[t + 1].x == firsts[t].x &&
                     firsts[t + 1].y == firsts[t].y + 1;
        }
      }
      if (!straight) continue;
      const Baseline cand{
          StraightPath{firsts.front(),
                       horizontal ? Direction::Right : Direction::Up,
                       static_cast<int>(firsts.size()) - 1},
          b};
      if (std::find(out.begin(), out.end(), cand) == out.end()) {
        out.push_back(cand);
      }
    }
  }

  auto key = [](const Baseline& b) {
    return std::tuple(static_cast<int>(b.direction), b.path.origin.y,
                      b.path.origin.x, static_cast<int>(b.path.direction),
                      b.path.length);
  };
  std::sort(out.begin(), out.end(),
            [&](const Baseline& a, const Baseline& b) { return key(a) < key(b); });
  return out;
}

int exact_treewidth(const SimpleGraph& graph) {
  const int n = graph.node_count();
  if (n <= 0) {
    raise(ErrorKind::InvalidArgument, "EmptyGraph",
          "exact treewidth oracle needs a nonempty graph");
  }
  if (n > 16) {
    raise(ErrorKind::InvalidArgument, "TooLarge",
          "exact treewidth oracle supports at most 16 vertices, got " +
              std::to_string(n));
  }
  std::vector<uint32_t> adj(static_cast<size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    for (int w : graph.neighbors(u)) adj[static_cast<size_t>(u)] |= 1u << w;
  }
  const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;

  // Neighbors of v "through" the eliminated set `mask`: vertices outside
  // mask (and != v) reachable from v via internal vertices inside mask.
  auto fill_degree = [&](uint32_t mask, int v) {
    uint32_t reached = adj[static_cast<size_t>(v)];
    uint32_t frontier = reached & mask;
    while (frontier != 0) {
      uint32_t grown = reached;
      uint32_t f = frontier;
      while (f != 0) {
        const int u = std::countr_zero(f);
        f &= f - 1;
        grown |= adj[static_cast<size_t>(u)];
      }
      frontier = (grown & ~reached) & mask;
      reached = grown;
    }
    reached &= ~(1u << v);
    return std::popcount(reached & ~mask);
  };

  // f(S) = best width over elimination orders that remove S first.
  std::vector<int8_t> f(static_cast<size_t>(full) + 1, 0);
  for (uint32_t mask = 1; mask <= full; ++mask) {
    int bestv = n;
    uint32_t m = mask;
    while (m != 0) {
      const int v = std::countr_zero(m);
      m &= m - 1;
      const uint32_t without = mask & ~(1u << v);
      const int width =
          std::max<int>(f[static_cast<size_t>(without)], fill_degree(without, v));
      bestv = std::min(bestv, width);
    }
    f[static_cast<size_t>(mask)] = static_cast<int8_t>(bestv);
  }
  return f[static_cast<size_t>(full)];
}

long long joint_dijkstra_cost(const ReducedGraph& graph,
                              const std::vector<Robot>& robots,
                              long long state_cap) {
  const int k = static_cast<int>(robots.size());
  std::vector<int> start(static_cast<size_t>(k));
  std::vector<int> target(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    start[static_cast<size_t>(i)] =
        graph.node_of(NodeRef::of(robots[static_cast<size_t>(i)].start));
    target[static_cast<size_t>(i)] =
        graph.node_of(NodeRef::of(robots[static_cast<size_t>(i)].target));
    if (start[static_cast<size_t>(i)] < 0 || target[static_cast<size_t>(i)] < 0) {
      raise(ErrorKind::InvalidArgument, "RobotOffGraph",
            "oracle solver: robot endpoint is not a live node");
    }
  }

  std::map<std::vector<int>, long long> dist;
  using Entry = std::pair<long long, std::vector<int>>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[start] = 0;
  pq.emplace(0, start);
  long long settled = 0;

  while (!pq.empty()) {
    auto [cost, cfg] = pq.top();
    pq.pop();
    auto it = dist.find(cfg);
    if (it == dist.end() || it->second != cost) continue;
    if (cfg == target) return cost;
    if (++settled > state_cap) {
      raise(ErrorKind::ResourceCap, "OracleStateCap",
            "oracle solver exceeded its configuration cap");
    }

    // All joint moves: each robot stays or steps to a neighbor, with no two
    // robots on one node and no pair exchanging positions.
    std::vector<std::vector<int>> options(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      options[static_cast<size_t>(i)].push_back(cfg[static_cast<size_t>(i)]);
      for (int nb : graph.neighbors(cfg[static_cast<size_t>(i)])) {
        options[static_cast<size_t>(i)].push_back(nb);
      }
    }
    std::vector<int> next(static_cast<size_t>(k));
    std::function<void(int, long long)> product = [&](int i, long long movers) {
      if (i == k) {
        for (int a = 0; a < k; ++a) {
          for (int b = a + 1; b < k; ++b) {
            if (next[static_cast<size_t>(a)] == next[static_cast<size_t>(b)]) {
              return;  // vertex conflict
            }
            if (next[static_cast<size_t>(a)] == cfg[static_cast<size_t>(b)] &&
                next[static_cast<size_t>(b)] == cfg[static_cast<size_t>(a)]) {
              return;  // swap conflict
            }
          }
        }
        const long long ncost = cost + movers;
        auto found = dist.find(next);
        if (found == dist.end() || ncost < found->second) {
          dist[next] = ncost;
          pq.emplace(ncost, next);
        }
        return;
      }
      for (int node : options[static_cast<size_t>(i)]) {
        next[static_cast<size_t>(i)] = node;
        product(i + 1, movers + (node == cfg[static_cast<size_t>(i)] ? 0 : 1));
      }
    };
    product(0, 0);
  }
  return -1;
}

}  // namespace polymapf::oracle
