// Timing comparison of the OpenMP kernels against their serial reference:
// operator-matrix assembly and a forward spherical transform.

#include <chrono>
#include <cstdio>

#include "hyperfrac/kernels.hpp"
#include "hyperfrac/parallel.hpp"
#include "hyperfrac/solver.hpp"
#include "hyperfrac/spectral.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
    using namespace hyperfrac;
    apply_thread_cap();
    ProblemParams params(3, 0.5, 2.0);
    auto grid = make_grid(1e-3, 15.0, 160, GridSpacing::Mixed);

    // warm the kernel caches so calibration cost stays out of the timings
    kernels::green(params, 1.0);

    auto t0 = Clock::now();
    auto serial = solver::radial_green_matrix(params, grid, /*parallel=*/false);
    double t_serial = seconds_since(t0);

    t0 = Clock::now();
    auto parallel = solver::radial_green_matrix(params, grid, /*parallel=*/true);
    double t_parallel = seconds_since(t0);

    double max_diff = 0.0;
    for (size_t i = 0; i < serial.entries.size(); ++i)
        max_diff = std::max(max_diff,
                            std::abs(serial.entries[i] - parallel.entries[i]));

    std::printf("workers                %d\n", worker_count());
    std::printf("matrix assembly serial   %8.3f s\n", t_serial);
    std::printf("matrix assembly parallel %8.3f s  (speedup %.2fx)\n", t_parallel,
                t_serial / t_parallel);
    std::printf("max |serial - parallel|  %.3e\n", max_diff);

    auto fgrid = make_grid(0.0, 9.0, 321, GridSpacing::Uniform);
    RadialFunction f =
        RadialFunction::sample(fgrid, [](double r) { return std::exp(-r * r); });
    t0 = Clock::now();
    auto F = spectral::spherical_transform(f, params.n);
    double t_fwd = seconds_since(t0);
    std::printf("forward transform        %8.3f s  (%d lambda nodes)\n", t_fwd,
                F.size());
    return 0;
}
