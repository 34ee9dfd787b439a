#ifndef TRACX_PARALLEL_HPP
#define TRACX_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tracx {

// Execution policy for the batch kernels (replicate runs, word scoring,
// representation matrices). Every kernel writes results by index, so serial
// and OpenMP execution produce bit-identical output.
enum class Exec { Serial, OpenMP };

inline Exec default_exec() {
#ifdef _OPENMP
    return Exec::OpenMP;
#else
    return Exec::Serial;
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs fn(i) for i in [0, n). Results must be written to per-index slots.
template <typename Fn>
void parallel_for(Exec exec, std::ptrdiff_t n, Fn&& fn) {
    if (exec == Exec::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

} // namespace tracx

#endif
