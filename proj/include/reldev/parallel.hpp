#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace reldev {

// Execution policy for the data-parallel kernels. exec::seq is the serial
// reference path; exec::par distributes iterations over OpenMP threads.
// Both paths run the same per-iteration code, so results are identical.
enum class exec { seq, par };

inline bool inside_parallel_region() {
#ifdef _OPENMP
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

// body(i) for i in [0, n). Iterations must be independent; writes go to
// disjoint slots. Falls back to serial when already inside a parallel region.
template <class F>
void parallel_for(std::int64_t n, exec policy, F&& body) {
#ifdef _OPENMP
    if (policy == exec::par && !inside_parallel_region()) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)policy;
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Variant for strongly uneven per-iteration cost (e.g. bandwidth candidates).
template <class F>
void parallel_for_dynamic(std::int64_t n, exec policy, F&& body) {
#ifdef _OPENMP
    if (policy == exec::par && !inside_parallel_region()) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)policy;
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace reldev
