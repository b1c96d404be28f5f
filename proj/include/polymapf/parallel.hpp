#pragma once

#include <functional>

namespace polymapf {

// Execution policy for data-parallel kernels (per-port distance maps,
// campaign fixture loops). Serial is the reference implementation; Parallel
// runs the same loop body under OpenMP. Both must produce identical results:
// every iteration writes only to its own slot, and results are merged in
// index order.
enum class ExecPolicy { Serial, Parallel };

// Runs fn(0..count-1). With ExecPolicy::Parallel the iterations execute on
// OpenMP threads (falling back to serial when OpenMP is unavailable).
// Exceptions thrown by iterations are captured and the one with the smallest
// index is rethrown after the loop, so failure behavior is deterministic.
void parallel_for(int count, ExecPolicy policy,
                  const std::function<void(int)>& fn);

// Number of worker threads the Parallel policy would use.
int worker_count();

}  // namespace polymapf
