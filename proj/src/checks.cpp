#include "polymapf/checks.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>

#include "polymapf/reduced_graph.hpp"
#include "polymapf/reduction.hpp"

namespace polymapf {
namespace {

ordered_json vjson(GridVertex v) { return ordered_json::array({v.x, v.y}); }

// Unit-weight shortest distances with per-seed starting levels (bucket
// queue); used to measure "shortest path forced through a given set".
std::vector<int> seeded_bfs(const DiscretizedPolygon& poly,
                            const std::vector<std::pair<int, int>>& seeds) {
  const int n = poly.vertex_count();
  std::vector<int> dist(static_cast<size_t>(n), -1);
  int max_seed = 0;
  for (const auto& [id, level] : seeds) max_seed = std::max(max_seed, level);
  std::vector<std::vector<int>> buckets(static_cast<size_t>(max_seed + n + 1));
  for (const auto& [id, level] : seeds) {
    int& d = dist[static_cast<size_t>(id)];
    if (d == -1 || level < d) {
      d = level;
      buckets[static_cast<size_t>(level)].push_back(id);
    }
  }
  for (size_t level = 0; level < buckets.size(); ++level) {
    for (size_t i = 0; i < buckets[level].size(); ++i) {
      int u = buckets[level][i];
      if (dist[static_cast<size_t>(u)] != static_cast<int>(level)) continue;
      GridVertex uv = poly.vertex_at(u);
      for (Direction d : kDirections) {
        int w = poly.index_of(step(uv, d));
        if (w < 0) continue;
        int& dw = dist[static_cast<size_t>(w)];
        if (dw == -1 || dw > static_cast<int>(level) + 1) {
          dw = static_cast<int>(level) + 1;
          buckets[level + 1].push_back(w);
        }
      }
    }
  }
  return dist;
}

// Elimination-ordering game over a bitset adjacency matrix. Eliminating v
// records the bag {v} + N(v), turns N(v) into a clique, and removes v.
class EliminationGame {
 public:
  explicit EliminationGame(const SimpleGraph& g)
      : n_(g.node_count()),
        words_((n_ + 63) / 64),
        row_(static_cast<size_t>(n_),
             std::vector<uint64_t>(static_cast<size_t>(words_), 0)),
        deg_(static_cast<size_t>(n_), 0) {
    for (int u = 0; u < n_; ++u) {
      for (int v : g.neighbors(u)) set_bit(u, v);
      deg_[static_cast<size_t>(u)] = static_cast<int>(g.neighbors(u).size());
    }
  }

  // min_fill=false: eliminate the minimum-degree vertex each step;
  // min_fill=true: eliminate the vertex whose neighborhood needs the fewest
  // new edges. Ties break toward the smaller vertex id.
  std::pair<int, TreeDecomposition> run(bool min_fill) {
    std::vector<char> alive(static_cast<size_t>(n_), 1);
    std::vector<long long> fill(static_cast<size_t>(n_), -1);
    std::vector<int> elim_index(static_cast<size_t>(n_), -1);
    std::vector<int> order(static_cast<size_t>(n_), -1);
    TreeDecomposition td;
    td.bags.resize(static_cast<size_t>(n_));
    td.parent.assign(static_cast<size_t>(n_), -1);

    for (int stepi = 0; stepi < n_; ++stepi) {
      int best = -1;
      long long best_key = 0;
      for (int v = 0; v < n_; ++v) {
        if (!alive[static_cast<size_t>(v)]) continue;
        long long key;
        if (min_fill) {
          if (fill[static_cast<size_t>(v)] < 0) {
            fill[static_cast<size_t>(v)] = fill_in(v);
          }
          key = fill[static_cast<size_t>(v)];
        } else {
          key = deg_[static_cast<size_t>(v)];
        }
        if (best < 0 || key < best_key) {
          best = v;
          best_key = key;
        }
      }
      const int v = best;
      std::vector<int> nb = neighbor_list(v);
      std::vector<int>& bag = td.bags[static_cast<size_t>(stepi)];
      bag = nb;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      order[static_cast<size_t>(stepi)] = v;
      elim_index[static_cast<size_t>(v)] = stepi;

      if (min_fill) {
        // Fill values can change for the bag and anything adjacent to it.
        std::vector<uint64_t> dirty = row_[static_cast<size_t>(v)];
        for (int u : nb) {
          const auto& ru = row_[static_cast<size_t>(u)];
          for (int w = 0; w < words_; ++w) dirty[static_cast<size_t>(w)] |= ru[static_cast<size_t>(w)];
        }
        for_bits(dirty, [&](int x) { fill[static_cast<size_t>(x)] = -1; });
      }

      for (size_t i = 0; i < nb.size(); ++i) {
        int u = nb[i];
        for (size_t j = i + 1; j < nb.size(); ++j) {
          int w = nb[j];
          if (!test_bit(u, w)) {
            set_bit(u, w);
            set_bit(w, u);
            ++deg_[static_cast<size_t>(u)];
            ++deg_[static_cast<size_t>(w)];
          }
        }
      }
      for (int u : nb) {
        clear_bit(u, v);
        --deg_[static_cast<size_t>(u)];
      }
      std::fill(row_[static_cast<size_t>(v)].begin(),
                row_[static_cast<size_t>(v)].end(), 0);
      deg_[static_cast<size_t>(v)] = 0;
      alive[static_cast<size_t>(v)] = 0;
    }

    for (int stepi = 0; stepi < n_; ++stepi) {
      int v = order[static_cast<size_t>(stepi)];
      int parent = -1;
      for (int u : td.bags[static_cast<size_t>(stepi)]) {
        if (u == v) continue;
        int e = elim_index[static_cast<size_t>(u)];
        if (parent < 0 || e < parent) parent = e;
      }
      if (parent < 0 && stepi + 1 < n_) parent = stepi + 1;
      td.parent[static_cast<size_t>(stepi)] = parent;
    }
    return {td.width(), std::move(td)};
  }

 private:
  void set_bit(int u, int v) {
    row_[static_cast<size_t>(u)][static_cast<size_t>(v >> 6)] |=
        uint64_t{1} << (v & 63);
  }
  void clear_bit(int u, int v) {
    row_[static_cast<size_t>(u)][static_cast<size_t>(v >> 6)] &=
        ~(uint64_t{1} << (v & 63));
  }
  bool test_bit(int u, int v) const {
    return (row_[static_cast<size_t>(u)][static_cast<size_t>(v >> 6)] >>
            (v & 63)) &
           1;
  }
  template <typename Fn>
  static void for_bits_of(const std::vector<uint64_t>& bits, Fn&& fn) {
    for (size_t w = 0; w < bits.size(); ++w) {
      uint64_t word = bits[w];
      while (word != 0) {
        int b = std::countr_zero(word);
        fn(static_cast<int>(w * 64) + b);
        word &= word - 1;
      }
    }
  }
  template <typename Fn>
  void for_bits(const std::vector<uint64_t>& bits, Fn&& fn) const {
    for_bits_of(bits, fn);
  }
  std::vector<int> neighbor_list(int v) const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(deg_[static_cast<size_t>(v)]));
    for_bits_of(row_[static_cast<size_t>(v)],
                [&](int u) { out.push_back(u); });
    return out;
  }
  // Number of neighbor pairs of v that are not yet adjacent.
  long long fill_in(int v) const {
    const auto& rv = row_[static_cast<size_t>(v)];
    long long deg = deg_[static_cast<size_t>(v)];
    long long adjacent_pairs2 = 0;
    for_bits_of(rv, [&](int u) {
      const auto& ru = row_[static_cast<size_t>(u)];
      for (int w = 0; w < words_; ++w) {
        adjacent_pairs2 += std::popcount(rv[static_cast<size_t>(w)] &
                                         ru[static_cast<size_t>(w)]);
      }
    });
    return deg * (deg - 1) / 2 - adjacent_pairs2 / 2;
  }

  int n_;
  int words_;
  std::vector<std::vector<uint64_t>> row_;
  std::vector<int> deg_;
};

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) {
    w = std::max(w, static_cast<int>(bag.size()) - 1);
  }
  return w;
}

ordered_json report_to_json(const PropertyReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["population"] = report.population;
  j["passed"] = report.passed();
  j["violations"] = report.violations;
  j["extra"] = report.extra;
  return j;
}

PropertyReport validate_tree_decomposition(const SimpleGraph& graph,
                                           const TreeDecomposition& td) {
  const int nodes = td.node_count();
  if (static_cast<int>(td.parent.size()) != nodes) {
    raise(ErrorKind::InvariantViolation, "MalformedTree",
          "parent/bag count mismatch");
  }
  int roots = 0;
  for (int i = 0; i < nodes; ++i) {
    int p = td.parent[static_cast<size_t>(i)];
    if (p == -1) {
      ++roots;
    } else if (p < 0 || p >= nodes || p == i) {
      raise(ErrorKind::InvariantViolation, "MalformedTree",
            "node " + std::to_string(i) + " has invalid parent " +
                std::to_string(p));
    }
  }
  if (nodes > 0 && roots != 1) {
    raise(ErrorKind::InvariantViolation, "MalformedTree",
          "expected exactly one root, found " + std::to_string(roots));
  }
  // Cycle check: every parent chain must terminate at the root.
  {
    std::vector<int> state(static_cast<size_t>(nodes), 0);  // 0 new, 1 ok
    for (int i = 0; i < nodes; ++i) {
      std::vector<int> chain;
      int u = i;
      while (u != -1 && state[static_cast<size_t>(u)] == 0) {
        state[static_cast<size_t>(u)] = 2;  // in progress
        chain.push_back(u);
        u = td.parent[static_cast<size_t>(u)];
        if (u != -1 && state[static_cast<size_t>(u)] == 2) {
          raise(ErrorKind::InvariantViolation, "MalformedTree",
                "parent links form a cycle through node " + std::to_string(u));
        }
      }
      for (int c : chain) state[static_cast<size_t>(c)] = 1;
    }
  }
  const int n = graph.node_count();
  for (int i = 0; i < nodes; ++i) {
    for (int v : td.bags[static_cast<size_t>(i)]) {
      if (v < 0 || v >= n) {
        raise(ErrorKind::InvariantViolation, "MalformedTree",
              "bag " + std::to_string(i) + " references unknown vertex " +
                  std::to_string(v));
      }
    }
  }

  PropertyReport report;
  report.name = "tree-decomposition";
  report.population = 2LL * n + graph.edge_count();
  report.extra["width"] = td.width();
  report.extra["nodes"] = nodes;

  std::vector<std::vector<int>> holders(static_cast<size_t>(n));
  for (int i = 0; i < nodes; ++i) {
    for (int v : td.bags[static_cast<size_t>(i)]) {
      holders[static_cast<size_t>(v)].push_back(i);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (holders[static_cast<size_t>(v)].empty()) {
      report.violations.push_back(
          ordered_json{{"type", "vertex-not-covered"}, {"vertex", v}});
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v : graph.neighbors(u)) {
      if (v <= u) continue;
      bool covered = false;
      for (int node : holders[static_cast<size_t>(u)]) {
        const auto& bag = td.bags[static_cast<size_t>(node)];
        if (std::binary_search(bag.begin(), bag.end(), v)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        report.violations.push_back(
            ordered_json{{"type", "edge-not-covered"},
                         {"edge", ordered_json::array({u, v})}});
      }
    }
  }
  // Connected occurrences: among the nodes holding v, exactly one may have a
  // parent that does not hold v (that node is the occurrence subtree root).
  for (int v = 0; v < n; ++v) {
    const auto& hold = holders[static_cast<size_t>(v)];
    if (hold.empty()) continue;
    int occurrence_roots = 0;
    for (int node : hold) {
      int p = td.parent[static_cast<size_t>(node)];
      bool parent_holds =
          p != -1 && std::binary_search(td.bags[static_cast<size_t>(p)].begin(),
                                        td.bags[static_cast<size_t>(p)].end(),
                                        v);
      if (!parent_holds) ++occurrence_roots;
    }
    if (occurrence_roots != 1) {
      report.violations.push_back(
          ordered_json{{"type", "occurrence-not-connected"},
                       {"vertex", v},
                       {"components", occurrence_roots}});
    }
  }
  return report;
}

std::pair<int, TreeDecomposition> heuristic_treewidth_upper(
    const SimpleGraph& graph) {
  if (graph.node_count() == 0) {
    raise(ErrorKind::InvalidArgument, "EmptyGraph",
          "treewidth heuristic requires a nonempty graph");
  }
  auto min_degree = EliminationGame(graph).run(false);
  auto min_fill = EliminationGame(graph).run(true);
  return min_fill.first <= min_degree.first ? std::move(min_fill)
                                            : std::move(min_degree);
}

SimpleGraph graph_power(const SimpleGraph& graph, int r) {
  if (r < 1) {
    raise(ErrorKind::InvalidArgument, "BadRadius",
          "graph power requires radius >= 1, got " + std::to_string(r));
  }
  const int n = graph.node_count();
  SimpleGraph out(n);
  std::vector<int> dist(static_cast<size_t>(n));
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[static_cast<size_t>(s)] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      int du = dist[static_cast<size_t>(u)];
      if (du > 0) out.add_edge(s, u);
      if (du == r) continue;
      for (int w : graph.neighbors(u)) {
        if (dist[static_cast<size_t>(w)] == -1) {
          dist[static_cast<size_t>(w)] = du + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return out;
}

std::vector<PropertyReport> run_lemma_suite(
    std::shared_ptr<const DiscretizedPolygon> polygon,
    const std::vector<GridVertex>& terminals, const ParamSet& params,
    ExecPolicy policy) {
  if (!polygon) {
    raise(ErrorKind::InvalidArgument, "NullPolygon",
          "lemma suite requires a polygon");
  }
  const DiscretizedPolygon& poly = *polygon;
  const std::vector<Port> ports = ports_of(terminals);
  const int kappa = static_cast<int>(ports.size());
  const SectorGraph sg = compute_sectors(polygon, terminals, policy);
  const int ns = sg.sector_count();

  const int nt = static_cast<int>(terminals.size());
  std::vector<std::vector<int>> tdist(static_cast<size_t>(nt));
  std::vector<int> tid(static_cast<size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    tdist[static_cast<size_t>(i)] = poly.bfs_all(terminals[static_cast<size_t>(i)]);
    tid[static_cast<size_t>(i)] = poly.index_of(terminals[static_cast<size_t>(i)]);
  }

  auto is_shape_trivial = [](const Sector& s) {
    return s.kind.has_value() && (*s.kind == SectorKind::SingleVertex ||
                                  *s.kind == SectorKind::StraightPath);
  };

  std::vector<PropertyReport> reports;

  // --- single-port-tree-and-layers ---
  {
    PropertyReport r;
    r.name = "single-port-tree-and-layers";
    r.population = kappa;
    std::vector<ordered_json> buckets(static_cast<size_t>(kappa),
                                      ordered_json::array());
    parallel_for(kappa, policy, [&](int i) {
      ordered_json& out = buckets[static_cast<size_t>(i)];
      const Port& port = ports[static_cast<size_t>(i)];
      SectorGraph g1 = single_port_sector_graph(polygon, port);
      SimpleGraph sk = g1.skeleton();
      if (sk.edge_count() != sk.node_count() - 1) {
        out.push_back(ordered_json{{"port", i},
                                   {"type", "not-a-tree"},
                                   {"sectors", sk.node_count()},
                                   {"edges", sk.edge_count()}});
      }
      std::vector<int> zero_sectors;
      for (const Sector& s : g1.sectors()) {
        if (s.bend_vector[0] == 0) zero_sectors.push_back(s.id);
      }
      if (zero_sectors.size() != 1) {
        out.push_back(ordered_json{
            {"port", i},
            {"type", "zero-layer-count"},
            {"count", static_cast<int>(zero_sectors.size())}});
      } else {
        std::set<int> expect;
        expect.insert(poly.index_of(port.anchor));
        for (Direction d : directions_of(port.axis)) {
          for (GridVertex v :
               poly.maximal_straight_path(port.anchor, d).vertices()) {
            expect.insert(poly.index_of(v));
          }
        }
        const auto& got = g1.sector(zero_sectors.front()).vertex_ids;
        if (std::vector<int>(expect.begin(), expect.end()) != got) {
          out.push_back(ordered_json{{"port", i},
                                     {"type", "zero-layer-shape"},
                                     {"sector", zero_sectors.front()}});
        }
      }
      for (const Sector& s : g1.sectors()) {
        int b = s.bend_vector[0];
        if (b == 0 || b == kInfiniteBend) continue;
        int preds = 0;
        for (int t : g1.neighbors(s.id)) {
          if (g1.sector(t).bend_vector[0] == b - 1) ++preds;
        }
        if (preds != 1) {
          out.push_back(ordered_json{{"port", i},
                                     {"type", "predecessor-count"},
                                     {"sector", s.id},
                                     {"layer", b},
                                     {"count", preds}});
        }
      }
      if (sk.node_count() >= 2) {
        int w = heuristic_treewidth_upper(sk).first;
        if (w != 1) {
          out.push_back(
              ordered_json{{"port", i}, {"type", "width"}, {"width", w}});
        }
      }
    });
    for (const auto& bucket : buckets) {
      for (const auto& v : bucket) r.violations.push_back(v);
    }
    reports.push_back(std::move(r));
  }

  // --- row-col-sector-bound ---
  {
    PropertyReport r;
    r.name = "row-col-sector-bound";
    const int bound = 3 * kappa;
    auto scan = [&](bool row_major) {
      const int outer = row_major ? poly.height() : poly.width();
      const int inner = row_major ? poly.width() : poly.height();
      for (int o = 0; o < outer; ++o) {
        int i = 0;
        while (i < inner) {
          GridVertex v = row_major ? GridVertex{i, o} : GridVertex{o, i};
          if (!poly.contains(v)) {
            ++i;
            continue;
          }
          int start = i;
          std::set<int> seen;
          while (i < inner) {
            GridVertex u = row_major ? GridVertex{i, o} : GridVertex{o, i};
            if (!poly.contains(u)) break;
            seen.insert(sg.sector_of(poly.index_of(u)));
            ++i;
          }
          ++r.population;
          if (static_cast<int>(seen.size()) > bound) {
            r.violations.push_back(ordered_json{
                {"type", row_major ? "row" : "column"},
                {"line", o},
                {"from", start},
                {"to", i - 1},
                {"sectors", static_cast<int>(seen.size())},
                {"bound", bound}});
          }
        }
      }
    };
    scan(true);
    scan(false);
    reports.push_back(std::move(r));
  }

  // --- non-clean-neighbor-bound ---
  {
    PropertyReport r;
    r.name = "non-clean-neighbor-bound";
    r.population = ns;
    for (int s = 0; s < ns; ++s) {
      int non_clean = 0;
      for (int t : sg.neighbors(s)) {
        if (!sg.sector(t).clean) ++non_clean;
      }
      if (non_clean > 8) {
        r.violations.push_back(ordered_json{
            {"sector", s}, {"non_clean_neighbors", non_clean}});
      }
    }
    reports.push_back(std::move(r));
  }

  // Port-prefix decompositions for the refinement and baseline reports.
  std::vector<std::optional<SectorGraph>> prefix(
      static_cast<size_t>(kappa) + 1);
  parallel_for(kappa - 1, policy, [&](int idx) {
    int i = idx + 1;
    prefix[static_cast<size_t>(i)] = compute_sectors_for_ports(
        polygon, {ports.begin(), ports.begin() + i}, ExecPolicy::Serial);
  });
  auto prefix_graph = [&](int i) -> const SectorGraph& {
    return i == kappa ? sg : *prefix[static_cast<size_t>(i)];
  };

  // --- non-clean-split-bound ---
  {
    PropertyReport r;
    r.name = "non-clean-split-bound";
    for (int i = 1; i < kappa; ++i) {
      const SectorGraph& coarse = prefix_graph(i);
      const SectorGraph& fine = prefix_graph(i + 1);
      r.population += coarse.sector_count();
      std::vector<int> non_clean(static_cast<size_t>(coarse.sector_count()),
                                 0);
      for (const Sector& t : fine.sectors()) {
        if (t.clean) continue;
        ++non_clean[static_cast<size_t>(
            coarse.sector_of(t.vertex_ids.front()))];
      }
      for (int s = 0; s < coarse.sector_count(); ++s) {
        if (non_clean[static_cast<size_t>(s)] > 6) {
          r.violations.push_back(
              ordered_json{{"ports", i},
                           {"coarse_sector", s},
                           {"non_clean_refined", non_clean[static_cast<size_t>(s)]}});
        }
      }
    }
    reports.push_back(std::move(r));
  }

  // --- baseline-existence ---
  {
    PropertyReport r;
    r.name = "baseline-existence";
    for (int i = 1; i <= kappa; ++i) {
      const SectorGraph& g = prefix_graph(i);
      for (const Sector& s : g.sectors()) {
        if (is_shape_trivial(s)) continue;
        ++r.population;
        if (s.baselines.empty()) {
          r.violations.push_back(ordered_json{{"ports", i}, {"sector", s.id}});
        }
      }
    }
    reports.push_back(std::move(r));
  }

  // --- via-baseline-shortest-paths ---
  {
    PropertyReport r;
    r.name = "via-baseline-shortest-paths";
    for (const Sector& s : sg.sectors()) {
      if (is_shape_trivial(s) || s.baselines.empty()) continue;
      std::set<int> baseline_ids;
      for (const Baseline& b : s.baselines) {
        for (GridVertex v : b.path.vertices()) {
          baseline_ids.insert(poly.index_of(v));
        }
      }
      for (int ti = 0; ti < nt; ++ti) {
        ++r.population;
        const auto& direct = tdist[static_cast<size_t>(ti)];
        std::vector<std::pair<int, int>> seeds;
        seeds.reserve(baseline_ids.size());
        for (int id : baseline_ids) {
          seeds.emplace_back(id, direct[static_cast<size_t>(id)]);
        }
        std::vector<int> via = seeded_bfs(poly, seeds);
        for (int u : s.vertex_ids) {
          if (via[static_cast<size_t>(u)] != direct[static_cast<size_t>(u)]) {
            r.violations.push_back(ordered_json{
                {"sector", s.id},
                {"terminal", vjson(terminals[static_cast<size_t>(ti)])},
                {"vertex", vjson(poly.vertex_at(u))},
                {"via_baseline", via[static_cast<size_t>(u)]},
                {"direct", direct[static_cast<size_t>(u)]}});
          }
        }
      }
    }
    reports.push_back(std::move(r));
  }

  // --- histogram-detour ---
  {
    PropertyReport r;
    r.name = "histogram-detour";
    for (const Sector& s : sg.sectors()) {
      if (!s.kind.has_value() || *s.kind != SectorKind::Histogram) continue;
      ++r.population;
      if (s.baselines.size() != 1) {
        r.violations.push_back(
            ordered_json{{"sector", s.id},
                         {"type", "baseline-count"},
                         {"count", static_cast<int>(s.baselines.size())}});
      }
      std::vector<int> base_ids;
      for (GridVertex v : s.baselines.front().path.vertices()) {
        base_ids.push_back(poly.index_of(v));
      }
      std::vector<int> delta = poly.bfs_all_multi(base_ids);
      for (int pi = 0; pi < nt; ++pi) {
        for (int qi = pi; qi < nt; ++qi) {
          const auto& dp = tdist[static_cast<size_t>(pi)];
          const auto& dq = tdist[static_cast<size_t>(qi)];
          int direct = dp[static_cast<size_t>(tid[static_cast<size_t>(qi)])];
          for (int u : s.vertex_ids) {
            int through = dp[static_cast<size_t>(u)] + dq[static_cast<size_t>(u)];
            if (through < direct + 2 * delta[static_cast<size_t>(u)]) {
              r.violations.push_back(ordered_json{
                  {"sector", s.id},
                  {"vertex", vjson(poly.vertex_at(u))},
                  {"p", vjson(terminals[static_cast<size_t>(pi)])},
                  {"q", vjson(terminals[static_cast<size_t>(qi)])},
                  {"through", through},
                  {"direct", direct},
                  {"delta", delta[static_cast<size_t>(u)]}});
            }
          }
        }
      }
    }
    reports.push_back(std::move(r));
  }

  // --- staircase-separation ---
  {
    PropertyReport r;
    r.name = "staircase-separation";
    for (const Sector& s : sg.sectors()) {
      if (!s.kind.has_value() || *s.kind != SectorKind::Staircase) continue;
      ++r.population;
      try {
        StaircaseBase frame = staircase_base(sg, s.id);
        for (int ti = 0; ti < nt; ++ti) {
          if (std::binary_search(frame.c_vertex_ids.begin(),
                                 frame.c_vertex_ids.end(),
                                 tid[static_cast<size_t>(ti)])) {
            r.violations.push_back(ordered_json{
                {"sector", s.id},
                {"terminal", vjson(terminals[static_cast<size_t>(ti)])}});
          }
        }
      } catch (const Error& e) {
        r.violations.push_back(ordered_json{
            {"sector", s.id}, {"type", "frame-error"}, {"code", e.code()}});
      }
    }
    reports.push_back(std::move(r));
  }

  // --- sector-treewidth-bound ---
  {
    PropertyReport r;
    r.name = "sector-treewidth-bound";
    r.population = 1;
    int w = heuristic_treewidth_upper(sg.skeleton()).first;
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 7,
                  static_cast<unsigned long>(kappa > 0 ? kappa - 1 : 0));
    if (mpz_class(w) > bound) {
      r.violations.push_back(
          ordered_json{{"width", w}, {"bound", bound.get_str()}});
    }
    r.extra["width"] = w;
    r.extra["bound"] = bound.get_str();
    r.extra["sectors"] = ns;
    reports.push_back(std::move(r));
  }

  // --- reduced-treewidth-bound ---
  {
    PropertyReport r;
    r.name = "reduced-treewidth-bound";
    if (nt == 0 || nt % 2 != 0) {
      r.extra["note"] = "requires an even number of terminals";
    } else {
      r.population = 1;
      const int k = nt / 2;
      Instance inst;
      inst.graph = std::make_shared<ReducedGraph>(polygon);
      for (int j = 0; j < k; ++j) {
        inst.robots.push_back({j, terminals[static_cast<size_t>(2 * j)],
                               terminals[static_cast<size_t>(2 * j + 1)]});
      }
      inst.params = params;
      try {
        ReduceResult rr = reduce_all(inst, policy);
        const ReducedGraph& rg = *rr.reduced.graph;
        SimpleGraph rsk(rg.node_count());
        for (int u = 0; u < rg.node_count(); ++u) {
          for (int w : rg.neighbors(u)) rsk.add_edge(u, w);
        }
        int w = heuristic_treewidth_upper(rsk).first;
        mpz_class q = mpz_class(k + 1) * (params.mu * params.mu + params.mu);
        mpz_class bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), 7,
                      static_cast<unsigned long>(28 * k + 5));
        bound *= q * q * q;
        if (mpz_class(w) > bound) {
          r.violations.push_back(
              ordered_json{{"width", w}, {"bound", bound.get_str()}});
        }
        r.extra["width"] = w;
        r.extra["bound"] = bound.get_str();
        r.extra["nodes"] = rg.node_count();
        r.extra["reductions"] =
            static_cast<int>(rr.trace.records.size());
      } catch (const Error& e) {
        r.violations.push_back(
            ordered_json{{"type", "reduction-error"}, {"code", e.code()}});
      }
    }
    reports.push_back(std::move(r));
  }

  return reports;
}

}  // namespace polymapf
