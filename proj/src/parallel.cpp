#include "polymapf/parallel.hpp"

#include <exception>
#include <vector>

#ifdef POLYMAPF_HAVE_OPENMP
#include <omp.h>
#endif

namespace polymapf {

void parallel_for(int count, ExecPolicy policy,
                  const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (policy == ExecPolicy::Serial || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
#ifdef POLYMAPF_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
#else
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
#endif
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int worker_count() {
#ifdef POLYMAPF_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace polymapf
