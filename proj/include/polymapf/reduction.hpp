#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymapf/instance.hpp"
#include "polymapf/sectors.hpp"

namespace polymapf {

enum class ReductionRule { Histogram, Clean, Staircase, Rectangle };

const char* reduction_rule_name(ReductionRule rule);

// One effective rule application. Replaying the trace on the original
// instance reproduces the reduced graph bit-exactly.
struct TraceRecord {
  ReductionRule rule = ReductionRule::Histogram;
  int sector_id = 0;
  int removed = 0;
  int gadgets_added = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct ReductionTrace {
  std::vector<TraceRecord> records;
  friend bool operator==(const ReductionTrace&,
                         const ReductionTrace&) = default;
};

ordered_json trace_to_json(const ReductionTrace& trace);
ReductionTrace trace_from_json(const ordered_json& j);

// A rule that was considered but not applied (with the reason), kept so the
// pipeline's decisions are auditable. `rule` is empty when no rule could be
// attributed (the sector failed classification outright).
struct SkipRecord {
  std::optional<ReductionRule> rule;
  int sector_id = 0;
  std::string reason;
  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

struct ReduceResult {
  Instance reduced;
  ReductionTrace trace;
  std::vector<SkipRecord> skips;
};

// --- Individual rules (each returns a modified copy of the graph) ---
// All threshold distances are graph distances in the PRE-reduction graph
// (the base polygon), matching the route-length arguments that justify the
// rules; mid-pipeline staleness therefore cannot change a rule's removal
// set. Each rule asserts that no terminal is removed and that the baseline
// it relies on is still fully alive.

// Histogram rule: remove the sector's vertices at distance > lambda/2 from
// its baseline (threshold compared as 2*dist > lambda, exactly).
ReducedGraph reduce_histogram(const ReducedGraph& graph, const Sector& sector,
                              const mpz_class& lambda,
                              const std::vector<GridVertex>& terminals);

// Clean-sector rule: with C_main the component of the sector graph minus
// the sector holding every terminal, remove every vertex of every sector
// outside C_main (including the clean sector itself) at distance >= lambda/2
// from the clean sector's baseline (2*dist >= lambda), except the baseline
// band itself (distance 0), which rerouted schedules travel along and which
// therefore survives any lambda override. The baseline facing C_main is
// used; it must separate the non-main side from C_main once its cells are
// blocked (the premise of the rule's rerouting argument), or the rule
// raises Error(InvalidArgument, "BaselineNotSeparating"). Raises
// Error(InvalidArgument, "NoBaseline") when the sector has no baseline.
ReducedGraph reduce_clean(const ReducedGraph& graph,
                          const SectorGraph& sector_graph, int sector_id,
                          const mpz_class& lambda,
                          const std::vector<GridVertex>& terminals);

// Staircase rule: remove every vertex of the component C_S (from
// staircase_base) at distance > (k+1)(lambda+1) from the staircase base Q_S.
ReducedGraph reduce_staircase(const ReducedGraph& graph,
                              const SectorGraph& sector_graph, int sector_id,
                              int k, const mpz_class& lambda,
                              const std::vector<GridVertex>& terminals);

// Rectangle rule: for an a-by-b rectangle sector with min(a,b) >=
// (k+1)(mu^2+mu), remove the interior of the central block left after
// stripping (k+1)(mu^2+mu) rows/columns from each side, keeping the block's
// boundary ring, and join each opposite-boundary pair sharing a row or
// column by a weave gadget whose path length equals their pre-reduction
// distance. Raises Error(InvalidArgument, "TooSmall") when the premise
// fails.
ReducedGraph reduce_rectangle(const ReducedGraph& graph, const Sector& sector,
                              int k, const mpz_class& mu,
                              const std::vector<GridVertex>& terminals);

// Full pipeline: sectors are computed once on the input graph and frozen;
// rules 1-3 sweep sectors in ascending id order (Histogram, then Clean, then
// Staircase) repeatedly until a full sweep changes nothing, then the
// rectangle rule runs once over all qualifying sectors. Only effective
// applications (removing vertices or adding gadgets) enter the trace;
// considered-but-skipped rules are recorded separately. An input whose graph
// is already reduced (vertices removed or gadgets present) passes through
// unchanged with an empty trace. Candidate removal sets may be computed in
// parallel; they are committed serially in trace order.
ReduceResult reduce_all(const Instance& instance,
                        ExecPolicy policy = ExecPolicy::Parallel);

// Re-applies a recorded trace to the original instance, verifying that each
// record's removal and gadget counts match exactly; raises
// Error(InvariantViolation, "TraceMismatch") otherwise.
ReduceResult replay_trace(const Instance& instance,
                          const ReductionTrace& trace);

}  // namespace polymapf
