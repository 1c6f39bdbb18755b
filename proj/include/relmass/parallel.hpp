#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relmass {

// Execution policy for the data-parallel kernels.  Every kernel has a serial
// reference path; the parallel path must produce bit-identical results (each
// output slot is computed independently, reductions are done serially over
// precomputed buffers).
enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class Body>
inline void parallel_for(std::ptrdiff_t n, Exec exec, Body&& body) {
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < n; ++i)
        body(static_cast<std::size_t>(i));
}

}  // namespace relmass
