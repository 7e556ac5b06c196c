// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hyperfrac/checks.hpp"
#include "hyperfrac/fit.hpp"
#include "hyperfrac/kernels.hpp"
#include "hyperfrac/parallel.hpp"
#include "hyperfrac/solver.hpp"
#include "hyperfrac/spectral.hpp"

using namespace hyperfrac;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& what) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const std::vector<ProblemParams> kConfigs = {
    {2, 0.3}, {3, 0.5}, {4, 0.7}, {5, 0.25}};

}  // namespace

int main() {
    apply_thread_cap();

    // calibrations (spectral matching, transform constants) happen on first
    // use; timed separately so the per-criterion budgets reflect steady state
    auto t0 = Clock::now();
    for (const auto& p : kConfigs) {
        kernels::shared_green(p);
        kernels::shared_kernel(p);
    }
    std::printf("setup: calibrated 4 configurations in %.1f s\n", elapsed(t0));

    // 1. Green near-origin law
    {
        t0 = Clock::now();
        bool ok = true;
        double worst = 0.0;
        for (const auto& p : kConfigs) {
            auto g = kernels::shared_green(p);
            double slope =
                fit_loglog_slope([&](double r) { return (*g)(r); }, 1e-4, 1e-2);
            double defect = std::abs(slope + (p.n - 2.0 * p.s));
            worst = std::max(worst, defect);
            ok = ok && defect < 0.05;
        }
        double dt = elapsed(t0);
        ok = ok && dt < 10.0;
        report(1, ok,
               "green origin slope -(n-2s) +- 0.05; worst defect " + fmt(worst) +
                   ", runtime " + fmt(dt) + " s (< 10 s)");
    }

    // 2. Green tail law
    {
        bool ok = true;
        double worst = 0.0;
        for (const auto& p : kConfigs) {
            auto g = kernels::shared_green(p);
            std::vector<double> vals;
            for (int i = 0; i < 11; ++i) {
                double r = 10.0 + i;
                vals.push_back(std::log((*g)(r)) + (p.n - 1.0) * r -
                               (p.s - 1.0) * std::log(r));
            }
            double mn = vals[0], mx = vals[0], mean = 0.0;
            for (double v : vals) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
                mean += v;
            }
            mean /= vals.size();
            double spread = (mx - mn) / std::abs(mean);
            worst = std::max(worst, spread);
            ok = ok && spread < 0.02;
        }
        report(2, ok, "green tail law constant within 2%; worst spread " + fmt(worst));
    }

    // 3. Kernel laws
    {
        bool ok = true;
        double worst_slope = 0.0, worst_rate = 0.0;
        for (const auto& p : kConfigs) {
            auto k = kernels::shared_kernel(p);
            double slope =
                fit_loglog_slope([&](double r) { return (*k)(r); }, 1e-4, 1e-2);
            double defect = std::abs(slope + (p.n + 2.0 * p.s));
            worst_slope = std::max(worst_slope, defect);
            ok = ok && defect < 0.05;
            std::vector<double> xs, ys;
            for (int i = 0; i < 11; ++i) {
                double r = 10.0 + i;
                xs.push_back(r);
                ys.push_back(std::log((*k)(r)) + (1.0 + p.s) * std::log(r));
            }
            double rate = fit_slope(xs, ys);
            double rate_defect = std::abs(-rate / (p.n - 1.0) - 1.0);
            worst_rate = std::max(worst_rate, rate_defect);
            ok = ok && rate_defect < 0.01;
        }
        report(3, ok,
               "kernel laws: slope defect " + fmt(worst_slope) + " (< 0.05), tail rate defect " +
                   fmt(worst_rate) + " (< 1%)");
    }

    // 4. Spectral vs closed form
    {
        t0 = Clock::now();
        bool ok = true;
        double worst_odd = 0.0, worst_even = 0.0;
        for (const auto& p : kConfigs) {
            auto claim = checks::spectral_agreement(p);
            if (p.odd())
                worst_odd = std::max(worst_odd, claim.measured);
            else
                worst_even = std::max(worst_even, claim.measured);
            ok = ok && claim.pass;
        }
        double dt = elapsed(t0);
        ok = ok && dt < 60.0;
        report(4, ok,
               "spectral agreement: odd " + fmt(worst_odd) + " (< 1e-6), even " +
                   fmt(worst_even) + " (< 1e-5), runtime " + fmt(dt) + " s (< 60 s)");
    }

    // 5. Positivity and monotonicity
    {
        int violations = 0;
        for (const auto& p : kConfigs) {
            auto g = kernels::shared_green(p);
            auto k = kernels::shared_kernel(p);
            double prev = 1e308;
            for (int i = 0; i < 200; ++i) {
                double r = 1e-3 * std::pow(30.0 / 1e-3, i / 199.0);
                double gv = (*g)(r), kv = (*k)(r);
                if (!(gv > 0.0) || !(kv > 0.0)) ++violations;
                if (!(gv < prev)) ++violations;
                prev = gv;
            }
        }
        report(5, violations == 0,
               "positivity + strict monotonicity on 200-point log grids: " +
                   std::to_string(violations) + " violations");
    }

    // 6. Operator inversion
    {
        bool ok = true;
        double worst = 0.0;
        for (double s : {0.25, 0.5, 0.75}) {
            auto claim = checks::inversion(ProblemParams(3, s), 1e-3);
            worst = std::max(worst, claim.measured);
            ok = ok && claim.pass;
        }
        report(6, ok, "inversion on compact bumps (n=3, s in {0.25,0.5,0.75}): sup error " +
                          fmt(worst) + " (< 1e-3)");
    }

    // 7. Independent-discretization cross-check
    {
        auto claim = checks::pv_cross_check(ProblemParams(3, 0.5), 1e-2);
        report(7, claim.pass,
               "direct PV vs spectral route at 5 radii: worst " + fmt(claim.measured) +
                   " (< 1e-2)");
    }

    // 8. Transform self-consistency
    {
        bool ok = true;
        double worst = 0.0;
        for (int n : {2, 3, 4, 5}) {
            auto claims = checks::transform_roundtrip(n, 1e-4);
            for (const auto& c : claims) {
                worst = std::max(worst, c.measured);
                ok = ok && c.pass;
            }
        }
        report(8, ok,
               "round trip + Plancherel for n in {2,3,4,5}: worst " + fmt(worst) +
                   " (< 1e-4)");
    }

    // 9. Solver
    {
        t0 = Clock::now();
        auto claims = checks::solver_run(ProblemParams(3, 0.5, 2.0), 15.0, 200, 1e-3, 600);
        double dt = elapsed(t0);
        bool ok = checks::all_pass(claims) && dt < 300.0;
        std::string detail = "solve (3, 0.5, p=2, 200 nodes):";
        for (const auto& c : claims) detail += " " + c.name + "=" + fmt(c.measured);
        detail += ", runtime " + fmt(dt) + " s (< 300 s)";
        report(9, ok, detail);
    }

    // 10. Maximum-principle sign test
    {
        auto claims = checks::maxprinciple(ProblemParams(3, 0.5), 20, 20240901);
        report(10, checks::all_pass(claims),
               "PV value negative at interior negative minima: " +
                   fmt(claims[0].measured) + "/20 cases, worst value " +
                   fmt(claims[1].measured));
    }

    // 11. HLS inequality
    {
        bool ok = true;
        double const_defect = 0.0, sharpest = 0.0;
        for (auto [n, lam] : std::vector<std::pair<int, double>>{{3, 1.0}, {3, 2.0}, {4, 2.0}}) {
            auto claims = checks::hls(n, lam, 10);
            ok = ok && checks::all_pass(claims);
            const_defect = std::max(const_defect, claims[0].measured);
            sharpest = std::max(sharpest, claims[2].measured);
        }
        report(11, ok,
               "HLS ratio <= C_{n,lambda}: max ratio/C " + fmt(sharpest) +
                   ", constant oracle defect " + fmt(const_defect) + " (< 1e-10)");
    }

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
