#pragma once

#include <cstddef>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel loop over an index range. threads <= 1 runs the serial
// reference path; anything else fans out with OpenMP when available. The
// body must only write to disjoint slots.

namespace dlcoh {

template <typename Fn>
void parallel_for(size_t n, Fn&& fn, int threads = 1) {
#ifdef _OPENMP
  if (threads != 1) {
    int want = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(want)
    for (long long i = 0; i < (long long)n; i++) fn((size_t)i);
    return;
  }
#endif
  for (size_t i = 0; i < n; i++) fn(i);
}

inline double wall_time() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

}  // namespace dlcoh
