#include "hyperfrac/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperfrac {

int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("HYPERFRAC_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
#else
    return 1;
#endif
}

void apply_thread_cap() {
#ifdef _OPENMP
    omp_set_num_threads(worker_count());
#endif
}

}  // namespace hyperfrac
