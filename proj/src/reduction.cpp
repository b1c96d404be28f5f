#include "polymapf/reduction.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

namespace polymapf {
namespace {

// All candidate sets below are computed against the base polygon
// (pre-reduction distances), so they are static across the pipeline.

std::vector<int> multi_source_dist(const DiscretizedPolygon& base,
                                   const std::vector<GridVertex>& sources) {
  std::vector<int> ids;
  ids.reserve(sources.size());
  for (GridVertex v : sources) ids.push_back(base.index_of(v));
  return base.bfs_all_multi(ids);
}

std::vector<GridVertex> histogram_candidates(const DiscretizedPolygon& base,
                                             const Sector& sector,
                                             const mpz_class& lambda) {
  if (!sector.kind.has_value() || *sector.kind != SectorKind::Histogram) {
    raise(ErrorKind::InvalidArgument, "NotHistogram",
          "sector " + std::to_string(sector.id) + " is not a histogram");
  }
  if (sector.baselines.empty()) {
    raise(ErrorKind::InvalidArgument, "NoBaseline",
          "histogram sector " + std::to_string(sector.id) +
              " has no baseline");
  }
  const std::vector<int> dist =
      multi_source_dist(base, sector.baselines.front().path.vertices());
  std::vector<GridVertex> out;
  for (int id : sector.vertex_ids) {
    int d = dist[static_cast<size_t>(id)];
    if (d != kUnreachable && mpz_class(2 * d) > lambda) {
      out.push_back(base.vertex_at(id));
    }
  }
  return out;
}

// The baseline of a clean sector that faces C_main (its opposite-side
// neighbor sector lies in C_main), falling back to the first baseline.
const Baseline& facing_baseline(const DiscretizedPolygon& base,
                                const SectorGraph& sg, const Sector& sec,
                                const std::vector<int>& comp, int c_main) {
  for (const Baseline& b : sec.baselines) {
    for (GridVertex v : b.path.vertices()) {
      int wi = base.index_of(step(v, opposite(b.direction)));
      if (wi < 0) continue;
      int ws = sg.sector_of(wi);
      if (ws != sec.id && comp[static_cast<size_t>(ws)] == c_main) return b;
      break;  // all opposite-side neighbors share one sector
    }
  }
  return sec.baselines.front();
}

std::vector<GridVertex> clean_candidates(
    const DiscretizedPolygon& base, const SectorGraph& sg, int sector_id,
    const mpz_class& lambda, const std::vector<GridVertex>& terminals) {
  const Sector& sec = sg.sector(sector_id);
  if (!sec.clean) {
    raise(ErrorKind::InvalidArgument, "NotClean",
          "sector " + std::to_string(sector_id) + " is not clean");
  }
  if (sec.baselines.empty()) {
    raise(ErrorKind::InvalidArgument, "NoBaseline",
          "clean sector " + std::to_string(sector_id) + " has no baseline");
  }
  if (terminals.empty()) {
    raise(ErrorKind::InvalidArgument, "NoTerminals",
          "clean-sector rule requires terminals");
  }

  // Components of the sector graph minus the sector.
  const int ns = sg.sector_count();
  std::vector<int> comp(static_cast<size_t>(ns), -1);
  int comp_count = 0;
  for (int seed = 0; seed < ns; ++seed) {
    if (seed == sector_id || comp[static_cast<size_t>(seed)] >= 0) continue;
    int c = comp_count++;
    std::vector<int> stack = {seed};
    comp[static_cast<size_t>(seed)] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : sg.neighbors(u)) {
        if (w == sector_id || comp[static_cast<size_t>(w)] >= 0) continue;
        comp[static_cast<size_t>(w)] = c;
        stack.push_back(w);
      }
    }
  }
  int c_main = -1;
  for (GridVertex t : terminals) {
    int s = sg.sector_of_vertex(t);
    if (s == sector_id) {
      raise(ErrorKind::InvalidArgument, "NotClean",
            "sector " + std::to_string(sector_id) + " contains a terminal");
    }
    int c = comp[static_cast<size_t>(s)];
    if (c_main < 0) {
      c_main = c;
    } else if (c != c_main) {
      raise(ErrorKind::InvalidArgument, "NotClean",
            "terminals split across components without sector " +
                std::to_string(sector_id));
    }
  }

  const Baseline& bl = facing_baseline(base, sg, sec, comp, c_main);

  // Separator premise: the rule's justification reroutes any excursion past
  // the baseline to run along the baseline itself, so once the baseline
  // cells are blocked, no vertex outside C_main may remain reachable from
  // C_main. Sectors touching C_main on a second flank (possible because a
  // terminal-side component may attach at several points) admit zero-slack
  // routes cutting through their interior; the rule must not fire there.
  {
    std::vector<char> blocked(static_cast<size_t>(base.vertex_count()), 0);
    for (GridVertex v : bl.path.vertices()) {
      blocked[static_cast<size_t>(base.index_of(v))] = 1;
    }
    std::vector<char> seen = blocked;
    std::vector<int> queue;
    for (int s = 0; s < ns; ++s) {
      if (s == sector_id || comp[static_cast<size_t>(s)] != c_main) continue;
      for (int id : sg.sector(s).vertex_ids) {
        if (!seen[static_cast<size_t>(id)]) {
          seen[static_cast<size_t>(id)] = 1;
          queue.push_back(id);
        }
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      GridVertex u = base.vertex_at(queue[head]);
      for (Direction d : kDirections) {
        int wi = base.index_of(step(u, d));
        if (wi < 0 || seen[static_cast<size_t>(wi)]) continue;
        seen[static_cast<size_t>(wi)] = 1;
        queue.push_back(wi);
      }
    }
    for (int s = 0; s < ns; ++s) {
      if (s != sector_id && comp[static_cast<size_t>(s)] == c_main) continue;
      for (int id : sg.sector(s).vertex_ids) {
        if (seen[static_cast<size_t>(id)] &&
            !blocked[static_cast<size_t>(id)]) {
          raise(ErrorKind::InvalidArgument, "BaselineNotSeparating",
                "baseline of clean sector " + std::to_string(sector_id) +
                    " does not cut the non-terminal side off from the "
                    "terminal component");
        }
      }
    }
  }

  const std::vector<int> dist = multi_source_dist(base, bl.path.vertices());

  std::vector<GridVertex> out;
  for (int s = 0; s < ns; ++s) {
    if (s != sector_id && comp[static_cast<size_t>(s)] == c_main) continue;
    for (int id : sg.sector(s).vertex_ids) {
      int d = dist[static_cast<size_t>(id)];
      // The baseline band (distance 0) always survives: the rerouted
      // schedules travel along it, so deleting it is unsound however small
      // lambda is driven by an override.
      if (d != kUnreachable && d >= 1 && mpz_class(2 * d) >= lambda) {
        out.push_back(base.vertex_at(id));
      }
    }
  }
  return out;
}

std::vector<GridVertex> staircase_candidates(const DiscretizedPolygon& base,
                                             const SectorGraph& sg,
                                             int sector_id, int k,
                                             const mpz_class& lambda) {
  const StaircaseBase frame = staircase_base(sg, sector_id);
  if (frame.c_vertex_ids.empty()) return {};
  std::vector<GridVertex> q;
  q.reserve(frame.q_vertex_ids.size());
  for (int id : frame.q_vertex_ids) q.push_back(base.vertex_at(id));
  const std::vector<int> dist = multi_source_dist(base, q);
  const mpz_class threshold = mpz_class(k + 1) * (lambda + 1);
  std::vector<GridVertex> out;
  for (int id : frame.c_vertex_ids) {
    int d = dist[static_cast<size_t>(id)];
    if (d != kUnreachable && mpz_class(d) > threshold) {
      out.push_back(base.vertex_at(id));
    }
  }
  return out;
}

struct RectanglePlan {
  std::vector<GridVertex> removals;
  // (endpoint a, endpoint b, interior length), rows bottom-up then columns
  // left-to-right.
  std::vector<std::tuple<GridVertex, GridVertex, int>> gadgets;
};

RectanglePlan rectangle_plan(const DiscretizedPolygon& base,
                             const Sector& sector, int k,
                             const mpz_class& mu) {
  if (!sector.kind.has_value() || *sector.kind != SectorKind::Rectangle) {
    raise(ErrorKind::InvalidArgument, "NotRectangle",
          "sector " + std::to_string(sector.id) + " is not a rectangle");
  }
  int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (int id : sector.vertex_ids) {
    GridVertex v = base.vertex_at(id);
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
  const int a = max_x - min_x + 1;
  const int b = max_y - min_y + 1;
  const mpz_class threshold = mpz_class(k + 1) * (mu * mu + mu);
  if (mpz_class(std::min(a, b)) < threshold) {
    raise(ErrorKind::InvalidArgument, "TooSmall",
          "rectangle sector " + std::to_string(sector.id) + " is " +
              std::to_string(a) + "x" + std::to_string(b) +
              ", below the frame threshold " + threshold.get_str());
  }
  const int t = static_cast<int>(threshold.get_si());

  RectanglePlan plan;
  const int x_lo = min_x + t, x_hi = max_x - t;
  const int y_lo = min_y + t, y_hi = max_y - t;
  if (x_lo > x_hi || y_lo > y_hi) return plan;  // empty central block

  for (int y = y_lo + 1; y < y_hi; ++y) {
    for (int x = x_lo + 1; x < x_hi; ++x) {
      plan.removals.push_back({x, y});
    }
  }
  if (x_hi - x_lo >= 2) {
    for (int y = y_lo; y <= y_hi; ++y) {
      plan.gadgets.emplace_back(GridVertex{x_lo, y}, GridVertex{x_hi, y},
                                x_hi - x_lo - 1);
    }
  }
  if (y_hi - y_lo >= 2) {
    for (int x = x_lo; x <= x_hi; ++x) {
      plan.gadgets.emplace_back(GridVertex{x, y_lo}, GridVertex{x, y_hi},
                                y_hi - y_lo - 1);
    }
  }
  return plan;
}

// Removes the still-alive candidates, asserting no terminal among them.
int apply_removals(ReducedGraph& graph,
                   const std::vector<GridVertex>& candidates,
                   const std::vector<GridVertex>& terminals) {
  std::vector<GridVertex> alive;
  alive.reserve(candidates.size());
  for (GridVertex v : candidates) {
    if (graph.grid_alive(v)) alive.push_back(v);
  }
  for (GridVertex v : alive) {
    if (std::find(terminals.begin(), terminals.end(), v) != terminals.end()) {
      raise(ErrorKind::InvariantViolation, "TerminalWouldBeRemoved",
            "reduction would remove terminal (" + std::to_string(v.x) + "," +
                std::to_string(v.y) + ")");
    }
  }
  return graph.remove_grid_vertices(alive);
}

bool baseline_alive(const ReducedGraph& graph, const Baseline& baseline) {
  for (GridVertex v : baseline.path.vertices()) {
    if (!graph.grid_alive(v)) return false;
  }
  return true;
}

void assert_baseline_alive(const ReducedGraph& graph,
                           const Baseline& baseline, int sector_id) {
  if (!baseline_alive(graph, baseline)) {
    raise(ErrorKind::InvariantViolation, "StaleBaseline",
          "baseline of sector " + std::to_string(sector_id) +
              " was partially removed by an earlier rule");
  }
}

}  // namespace

const char* reduction_rule_name(ReductionRule rule) {
  switch (rule) {
    case ReductionRule::Histogram: return "Histogram";
    case ReductionRule::Clean: return "Clean";
    case ReductionRule::Staircase: return "Staircase";
    case ReductionRule::Rectangle: return "Rectangle";
  }
  return "?";
}

ordered_json trace_to_json(const ReductionTrace& trace) {
  ordered_json records = ordered_json::array();
  for (const TraceRecord& r : trace.records) {
    ordered_json rec;
    rec["rule"] = reduction_rule_name(r.rule);
    rec["sector"] = r.sector_id;
    rec["removed"] = r.removed;
    rec["gadgets_added"] = r.gadgets_added;
    records.push_back(std::move(rec));
  }
  ordered_json j;
  j["records"] = std::move(records);
  return j;
}

ReductionTrace trace_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("records") || !j["records"].is_array()) {
    raise(ErrorKind::InvalidArgument, "SchemaError",
          "trace JSON must be an object with a \"records\" array");
  }
  ReductionTrace trace;
  for (const auto& rec : j["records"]) {
    TraceRecord r;
    std::string name = rec.at("rule").get<std::string>();
    if (name == "Histogram") {
      r.rule = ReductionRule::Histogram;
    } else if (name == "Clean") {
      r.rule = ReductionRule::Clean;
    } else if (name == "Staircase") {
      r.rule = ReductionRule::Staircase;
    } else if (name == "Rectangle") {
      r.rule = ReductionRule::Rectangle;
    } else {
      raise(ErrorKind::InvalidArgument, "SchemaError",
            "unknown reduction rule \"" + name + "\"");
    }
    r.sector_id = rec.at("sector").get<int>();
    r.removed = rec.at("removed").get<int>();
    r.gadgets_added = rec.at("gadgets_added").get<int>();
    trace.records.push_back(r);
  }
  return trace;
}

ReducedGraph reduce_histogram(const ReducedGraph& graph, const Sector& sector,
                              const mpz_class& lambda,
                              const std::vector<GridVertex>& terminals) {
  auto candidates = histogram_candidates(graph.base(), sector, lambda);
  assert_baseline_alive(graph, sector.baselines.front(), sector.id);
  ReducedGraph out = graph;
  apply_removals(out, candidates, terminals);
  return out;
}

ReducedGraph reduce_clean(const ReducedGraph& graph,
                          const SectorGraph& sector_graph, int sector_id,
                          const mpz_class& lambda,
                          const std::vector<GridVertex>& terminals) {
  auto candidates = clean_candidates(graph.base(), sector_graph, sector_id,
                                     lambda, terminals);
  assert_baseline_alive(graph, sector_graph.sector(sector_id).baselines.front(),
                        sector_id);
  ReducedGraph out = graph;
  apply_removals(out, candidates, terminals);
  return out;
}

ReducedGraph reduce_staircase(const ReducedGraph& graph,
                              const SectorGraph& sector_graph, int sector_id,
                              int k, const mpz_class& lambda,
                              const std::vector<GridVertex>& terminals) {
  auto candidates =
      staircase_candidates(graph.base(), sector_graph, sector_id, k, lambda);
  ReducedGraph out = graph;
  apply_removals(out, candidates, terminals);
  return out;
}

ReducedGraph reduce_rectangle(const ReducedGraph& graph, const Sector& sector,
                              int k, const mpz_class& mu,
                              const std::vector<GridVertex>& terminals) {
  RectanglePlan plan = rectangle_plan(graph.base(), sector, k, mu);
  ReducedGraph out = graph;
  apply_removals(out, plan.removals, terminals);
  for (const auto& [a, b, len] : plan.gadgets) {
    out.add_gadget(a, b, len);
  }
  return out;
}

ReduceResult reduce_all(const Instance& instance, ExecPolicy policy) {
  if (instance.robots.empty()) {
    raise(ErrorKind::InvalidInstance, "NoRobots",
          "reduction requires at least one robot");
  }
  ReduceResult result{instance, {}, {}};
  const ReducedGraph& input = *instance.graph;
  if (!input.is_pure()) return result;  // already reduced: pass through

  const auto base = input.base_ptr();
  const std::vector<GridVertex> terminals = instance.terminals();
  const SectorGraph sg = compute_sectors(base, terminals, policy);
  const int ns = sg.sector_count();
  const int k = instance.k();
  const mpz_class& lambda = instance.params.lambda;
  const mpz_class& mu = instance.params.mu;

  // Phase A: static per-sector candidate sets, computed in parallel. A rule
  // whose prerequisites fail yields a skip record instead of aborting
  // (skipping removals is always sound).
  struct SectorPlan {
    std::optional<std::vector<GridVertex>> histogram;
    std::optional<std::vector<GridVertex>> clean;
    std::optional<std::vector<GridVertex>> staircase;
    std::vector<SkipRecord> skips;
  };
  std::vector<SectorPlan> plans(static_cast<size_t>(ns));
  parallel_for(ns, policy, [&](int s) {
    SectorPlan& plan = plans[static_cast<size_t>(s)];
    const Sector& sec = sg.sector(s);
    if (!sec.kind.has_value()) {
      plan.skips.push_back({std::nullopt, s, "UnclassifiableSector"});
    } else if (*sec.kind == SectorKind::Histogram) {
      plan.histogram = histogram_candidates(*base, sec, lambda);
    } else if (*sec.kind == SectorKind::Staircase) {
      try {
        plan.staircase = staircase_candidates(*base, sg, s, k, lambda);
      } catch (const Error& e) {
        plan.skips.push_back({ReductionRule::Staircase, s, e.code()});
      }
    }
    if (sec.clean && sg.ports().size() >= 2) {
      if (sec.baselines.empty()) {
        plan.skips.push_back({ReductionRule::Clean, s, "NoBaseline"});
      } else {
        try {
          plan.clean = clean_candidates(*base, sg, s, lambda, terminals);
        } catch (const Error& e) {
          plan.skips.push_back({ReductionRule::Clean, s, e.code()});
        }
      }
    }
  });
  for (const SectorPlan& p : plans) {
    for (const SkipRecord& s : p.skips) result.skips.push_back(s);
  }

  ReducedGraph working = input;
  auto stale_skip_recorded = std::set<int>{};

  // Phase B: Histogram -> Clean -> Staircase sweeps over ascending sector
  // ids, repeated until a full iteration changes nothing. Candidate sets are
  // static, so only aliveness at application time varies.
  bool changed = true;
  while (changed) {
    changed = false;
    auto run_rule = [&](ReductionRule rule,
                        const std::optional<std::vector<GridVertex>>&
                            candidates,
                        int s, const Baseline* baseline) {
      if (!candidates.has_value()) return;
      std::vector<GridVertex> alive;
      for (GridVertex v : *candidates) {
        if (working.grid_alive(v)) alive.push_back(v);
      }
      if (alive.empty()) return;
      if (baseline != nullptr && !baseline_alive(working, *baseline)) {
        // Another sector's rule consumed this baseline first; surfacing as
        // a skip keeps the pipeline sound (fewer removals) and auditable.
        if (stale_skip_recorded.insert(s * 4 + static_cast<int>(rule))
                .second) {
          result.skips.push_back({rule, s, "StaleBaseline"});
        }
        return;
      }
      int removed = apply_removals(working, alive, terminals);
      if (removed > 0) {
        result.trace.records.push_back({rule, s, removed, 0});
        changed = true;
      }
    };
    for (int s = 0; s < ns; ++s) {
      const Sector& sec = sg.sector(s);
      run_rule(ReductionRule::Histogram, plans[static_cast<size_t>(s)].histogram,
               s, sec.baselines.empty() ? nullptr : &sec.baselines.front());
    }
    for (int s = 0; s < ns; ++s) {
      const Sector& sec = sg.sector(s);
      run_rule(ReductionRule::Clean, plans[static_cast<size_t>(s)].clean, s,
               sec.baselines.empty() ? nullptr : &sec.baselines.front());
    }
    for (int s = 0; s < ns; ++s) {
      run_rule(ReductionRule::Staircase,
               plans[static_cast<size_t>(s)].staircase, s, nullptr);
    }
  }

  // Phase C: rectangle rule, once, over qualifying sectors.
  const mpz_class frame_threshold = mpz_class(k + 1) * (mu * mu + mu);
  for (int s = 0; s < ns; ++s) {
    const Sector& sec = sg.sector(s);
    if (!sec.kind.has_value() || *sec.kind != SectorKind::Rectangle) continue;
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (int id : sec.vertex_ids) {
      GridVertex v = base->vertex_at(id);
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
    if (mpz_class(std::min(max_x - min_x + 1, max_y - min_y + 1)) <
        frame_threshold) {
      continue;  // premise fails: the rule does not apply
    }
    RectanglePlan plan = rectangle_plan(*base, sec, k, mu);
    int removed = apply_removals(working, plan.removals, terminals);
    int added = 0;
    for (const auto& [a, b, len] : plan.gadgets) {
      working.add_gadget(a, b, len);
      ++added;
    }
    if (removed > 0 || added > 0) {
      result.trace.records.push_back(
          {ReductionRule::Rectangle, s, removed, added});
    }
  }

  result.reduced.graph = std::make_shared<ReducedGraph>(std::move(working));
  return result;
}

ReduceResult replay_trace(const Instance& instance,
                          const ReductionTrace& trace) {
  if (!instance.graph->is_pure()) {
    raise(ErrorKind::InvalidArgument, "AlreadyReduced",
          "trace replay requires the original (unreduced) instance");
  }
  const auto base = instance.graph->base_ptr();
  const std::vector<GridVertex> terminals = instance.terminals();
  const SectorGraph sg =
      compute_sectors(base, terminals, ExecPolicy::Serial);
  const int k = instance.k();
  const mpz_class& lambda = instance.params.lambda;
  const mpz_class& mu = instance.params.mu;

  ReducedGraph working = *instance.graph;
  for (size_t i = 0; i < trace.records.size(); ++i) {
    const TraceRecord& rec = trace.records[i];
    const Sector& sec = sg.sector(rec.sector_id);
    int removed = 0;
    int added = 0;
    switch (rec.rule) {
      case ReductionRule::Histogram:
        removed = apply_removals(
            working, histogram_candidates(*base, sec, lambda), terminals);
        break;
      case ReductionRule::Clean:
        removed = apply_removals(
            working,
            clean_candidates(*base, sg, rec.sector_id, lambda, terminals),
            terminals);
        break;
      case ReductionRule::Staircase:
        removed = apply_removals(
            working,
            staircase_candidates(*base, sg, rec.sector_id, k, lambda),
            terminals);
        break;
      case ReductionRule::Rectangle: {
        RectanglePlan plan = rectangle_plan(*base, sec, k, mu);
        removed = apply_removals(working, plan.removals, terminals);
        for (const auto& [a, b, len] : plan.gadgets) {
          working.add_gadget(a, b, len);
          ++added;
        }
        break;
      }
    }
    if (removed != rec.removed || added != rec.gadgets_added) {
      raise(ErrorKind::InvariantViolation, "TraceMismatch",
            "trace record " + std::to_string(i) + " (" +
                reduction_rule_name(rec.rule) + ", sector " +
                std::to_string(rec.sector_id) + ") replayed as removed=" +
                std::to_string(removed) + " gadgets=" + std::to_string(added) +
                ", expected removed=" + std::to_string(rec.removed) +
                " gadgets=" + std::to_string(rec.gadgets_added));
    }
  }

  ReduceResult result{instance, trace, {}};
  result.reduced.graph = std::make_shared<ReducedGraph>(std::move(working));
  return result;
}

}  // namespace polymapf
