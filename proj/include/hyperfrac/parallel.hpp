#pragma once

namespace hyperfrac {

// Worker count for OpenMP loops: min(omp_get_max_threads(), HYPERFRAC_THREADS).
// Returns 1 when built without OpenMP.
int worker_count();

// Applies worker_count() as the global OpenMP thread cap. Called once by
// entry points before parallel regions; harmless to call repeatedly.
void apply_thread_cap();

}  // namespace hyperfrac
