#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qnr {

/// Execution policy for the data-parallel kernels. Serial is the reference
/// path; Parallel must produce bit-identical results.
enum class Exec { Serial, Parallel };

/// Thread count for Parallel kernels. QRANGE_THREADS, when set to a positive
/// integer, caps the OpenMP default.
inline int thread_cap() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("QRANGE_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0 && cap < n) n = cap;
        } catch (...) {
        }
    }
    return n;
}

}  // namespace qnr
