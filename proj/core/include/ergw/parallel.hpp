#pragma once

#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ergw {

inline void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Deterministic data-parallel loop: every index writes only its own slots, so
// results do not depend on the thread count. Reductions are done by the caller
// over the filled arrays, in index order.
template <typename F>
void parallel_for(std::int64_t begin, std::int64_t end, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = begin; i < end; ++i) f(i);
#else
    for (std::int64_t i = begin; i < end; ++i) f(i);
#endif
}

}  // namespace ergw
