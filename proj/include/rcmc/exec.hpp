#pragma once

#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rcmc {

// Every hot kernel comes in two flavours: the OpenMP one used by default and
// a serial reference kept as the comparison baseline for tests and benchmarks.
// Results are identical either way (rational reductions are exact, float
// kernels parallelize by row with unchanged per-row summation order).
enum class Exec { serial, parallel };

inline int max_threads(Exec exec) {
#ifdef _OPENMP
    return exec == Exec::parallel ? omp_get_max_threads() : 1;
#else
    (void)exec;
    return 1;
#endif
}

inline int thread_index() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

inline double wall_time() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace rcmc
