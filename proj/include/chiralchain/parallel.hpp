#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chiralchain {

/// Execution policy for the data-parallel kernels. Every kernel has a
/// serial path that produces bit-identical results to the OpenMP path
/// (each output slot is written by exactly one iteration), so Serial is
/// both the reference implementation for tests and the fallback when
/// OpenMP is unavailable.
enum class Exec { Serial, Parallel };

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_worker_count(int k) {
#ifdef _OPENMP
  if (k > 0) omp_set_num_threads(k);
#else
  (void)k;
#endif
}

/// Runs fn(i) for i in [0, count). Iterations must be independent.
template <typename Fn>
void parallel_for(Exec exec, std::int64_t count, Fn&& fn) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
#endif
  }
  for (std::int64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace chiralchain
