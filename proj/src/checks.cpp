#include "hyperfrac/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperfrac/fit.hpp"
#include "hyperfrac/kernels.hpp"
#include "hyperfrac/solver.hpp"
#include "hyperfrac/spectral.hpp"

namespace hyperfrac::checks {

bool all_pass(const std::vector<Claim>& claims) {
    for (const auto& c : claims)
        if (!c.pass) return false;
    return true;
}

std::vector<Claim> asymptotics(const ProblemParams& params) {
    std::vector<Claim> out;
    auto green = kernels::shared_green(params);
    auto kern = kernels::shared_kernel(params);
    const int n = params.n;
    const double s = params.s;

    double slope_g = fit_loglog_slope([&](double r) { return (*green)(r); }, 1e-4, 1e-2);
    out.push_back({"green_origin_slope_defect", std::abs(slope_g + (n - 2.0 * s)), 0.05,
                   std::abs(slope_g + (n - 2.0 * s)) < 0.05});

    // tail law: log G + (n-1) rho - (s-1) log rho constant within 2%
    {
        std::vector<double> vals;
        for (int i = 0; i < 9; ++i) {
            double r = 10.0 + 10.0 * i / 8.0;
            vals.push_back(std::log((*green)(r)) + (n - 1.0) * r - (s - 1.0) * std::log(r));
        }
        double mn = *std::min_element(vals.begin(), vals.end());
        double mx = *std::max_element(vals.begin(), vals.end());
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= vals.size();
        double spread = (mx - mn) / std::abs(mean);
        out.push_back({"green_tail_constancy", spread, 0.02, spread < 0.02});
    }

    double slope_k = fit_loglog_slope([&](double r) { return (*kern)(r); }, 1e-4, 1e-2);
    out.push_back({"kernel_origin_slope_defect", std::abs(slope_k + (n + 2.0 * s)), 0.05,
                   std::abs(slope_k + (n + 2.0 * s)) < 0.05});

    // kernel tail: slope of log K + (1+s) log rho against rho recovers -(n-1)
    {
        std::vector<double> xs, ys;
        for (int i = 0; i < 9; ++i) {
            double r = 10.0 + 10.0 * i / 8.0;
            xs.push_back(r);
            ys.push_back(std::log((*kern)(r)) + (1.0 + s) * std::log(r));
        }
        double rate = fit_slope(xs, ys);
        double defect = std::abs(-rate / (n - 1.0) - 1.0);
        out.push_back({"kernel_tail_rate_defect", defect, 0.01, defect < 0.01});
    }

    // positivity and strict monotonicity on a 200-point log grid
    {
        int violations = 0;
        double prev = 0.0;
        for (int i = 0; i < 200; ++i) {
            double r = 1e-3 * std::pow(30.0 / 1e-3, i / 199.0);
            double g = (*green)(r);
            double k = (*kern)(r);
            if (!(g > 0.0) || !(k > 0.0)) ++violations;
            if (i > 0 && !(g < prev)) ++violations;
            prev = g;
        }
        out.push_back({"positivity_monotonicity_violations",
                       static_cast<double>(violations), 0.5, violations == 0});
    }
    return out;
}

Claim spectral_agreement(const ProblemParams& params, double lo, double hi, int npts) {
    auto green = kernels::shared_green(params);
    spectral::GreenSpectral gs(params);
    double worst = 0.0;
    for (int i = 0; i < npts; ++i) {
        double r = lo * std::pow(hi / lo, i / (npts - 1.0));
        double a = (*green)(r), b = gs(r);
        worst = std::max(worst, std::abs(a / b - 1.0));
    }
    double tol = params.odd() ? 1e-6 : 1e-5;
    return {"spectral_vs_closed_form", worst, tol, worst < tol};
}

Claim inversion(const ProblemParams& params, double tol) {
    auto grid = make_grid(0.004, 14.0, 420, GridSpacing::Mixed);
    RadialFunction bump = RadialFunction::sample(
        grid, [](double r) { return std::exp(-1.5 * r * r); });
    auto conv = solver::green_convolve(params, bump, grid);
    RadialFunction u(grid, conv);
    RadialFunction back = spectral::fractional_laplacian_radial(u, params);
    double worst = 0.0, scale = bump.max_abs();
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > 6.0) break;  // beyond the bump both sides are noise-level
        worst = std::max(worst, std::abs(back.values()[i] - bump.values()[i]) / scale);
    }
    return {"operator_inversion", worst, tol, worst < tol};
}

std::vector<Claim> transform_roundtrip(int n, double tol) {
    auto grid = make_grid(0.0, 9.0, 361, GridSpacing::Uniform);
    RadialFunction f =
        RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
    spectral::SpectralDensity F = spectral::spherical_transform(f, n);
    // relative error measured where the bump carries mass (f >= 1e-4 of peak)
    std::vector<double> probe;
    for (double r = 0.1; r <= 3.0; r += 0.29) probe.push_back(r);
    std::vector<double> probe_grid{0.0};
    probe_grid.insert(probe_grid.end(), probe.begin(), probe.end());
    probe_grid.push_back(9.0);
    RadialFunction back = spectral::inverse_spherical_transform(F, n, probe_grid);
    double worst = 0.0;
    for (size_t i = 1; i + 1 < probe_grid.size(); ++i) {
        double want = std::exp(-probe_grid[i] * probe_grid[i]);
        worst = std::max(worst, std::abs(back.values()[i] - want) / want);
    }
    std::vector<Claim> out;
    out.push_back({"transform_round_trip", worst, tol, worst < tol});
    double pd = spectral::plancherel_defect(f, n);
    out.push_back({"plancherel_identity", pd, tol, pd < tol});
    return out;
}

Claim pv_cross_check(const ProblemParams& params, double tol, int radii) {
    auto grid = make_grid(0.003, 12.0, 360, GridSpacing::Mixed);
    RadialFunction u =
        RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
    RadialFunction spec = spectral::fractional_laplacian_radial(u, params);
    // sup-relative: the pointwise quotient degenerates near the sign change of
    // the transformed bump
    double scale = 0.0;
    std::vector<double> d(radii), s(radii);
    for (int k = 0; k < radii; ++k) {
        double r0 = 0.4 + 2.0 * k / (radii - 1.0);
        auto x = geometry::boost(r0, geometry::HPoint::origin(params.n), {1, 0.0});
        d[k] = solver::direct_fractional_laplacian(u, params, x);
        s[k] = spec(r0);
        scale = std::max(scale, std::abs(s[k]));
    }
    double worst = 0.0;
    for (int k = 0; k < radii; ++k)
        worst = std::max(worst, std::abs(d[k] - s[k]) / scale);
    return {"pv_vs_spectral", worst, tol, worst < tol};
}

std::vector<Claim> maxprinciple(const ProblemParams& params, int count,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Claim> out;
    int negatives = 0;
    double worst = -1e300;
    for (int c = 0; c < count; ++c) {
        double a = 0.6 + 1.4 * unif(rng);   // zero crossing radius
        double w = 0.8 + 1.4 * unif(rng);   // width
        double b = 0.3 * unif(rng);         // far nonnegative bump height
        double cb = a + 1.0 + 2.0 * unif(rng);
        auto grid = make_grid(0.004, 14.0, 420, GridSpacing::Mixed);
        RadialFunction u = RadialFunction::sample(grid, [&](double r) {
            double core = (r * r - a * a) * std::exp(-(r * r) / (w * w));
            double far = b * std::exp(-std::pow((r - cb) / 0.6, 2));
            return core + far;
        });
        double val = solver::direct_fractional_laplacian(
            u, params, geometry::HPoint::origin(params.n));
        if (val < 0.0) ++negatives;
        worst = std::max(worst, val);
    }
    out.push_back({"negative_min_sign_cases", static_cast<double>(negatives),
                   static_cast<double>(count), negatives == count});
    out.push_back({"negative_min_worst_value", worst, 0.0, worst < 0.0});
    return out;
}

std::vector<Claim> hls(int n, double lambda_exp, int family) {
    std::vector<Claim> out;
    double constant = solver::hls_constant(n, lambda_exp);
    // independent log-gamma route for the constant
    double lg_std = 0.5 * lambda_exp * std::log(M_PI) +
                    std::lgamma(0.5 * n - 0.5 * lambda_exp) -
                    std::lgamma(n - 0.5 * lambda_exp) +
                    (-1.0 + lambda_exp / n) *
                        (std::lgamma(0.5 * n) - std::lgamma(static_cast<double>(n)));
    double const_defect = std::abs(constant / std::exp(lg_std) - 1.0);
    out.push_back({"hls_constant_oracle", const_defect, 1e-10, const_defect < 1e-10});

    auto grid = make_grid(0.0, 10.0, 260, GridSpacing::Uniform);
    int violations = 0;
    double closest = 0.0;
    for (int k = 0; k < family; ++k) {
        double w1 = 0.35 + 0.25 * k;
        double c2 = 0.2 * k;
        RadialFunction f = RadialFunction::sample(
            grid, [&](double r) { return std::exp(-(r * r) / (w1 * w1)); });
        RadialFunction g = RadialFunction::sample(grid, [&](double r) {
            return std::exp(-std::pow((r - c2) / (0.5 + 0.1 * k), 2));
        });
        double ratio = solver::hls_ratio(f, g, n, lambda_exp);
        if (!(ratio <= constant)) ++violations;
        closest = std::max(closest, ratio / constant);
    }
    out.push_back({"hls_violations", static_cast<double>(violations), 0.5,
                   violations == 0});
    out.push_back({"hls_sharpest_ratio", closest, 1.0, closest < 1.0});
    return out;
}

std::vector<Claim> solver_run(const ProblemParams& params, double rho_max, int nodes,
                              double tol, int max_iter) {
    std::vector<Claim> out;
    auto grid = make_grid(1e-3, rho_max, nodes, GridSpacing::Mixed);
    solver::SolveReport rep = solver::picard_solve(params, grid, tol, max_iter);
    out.push_back({"solver_residual", rep.residual, tol, rep.residual < tol});
    double min_val = *std::min_element(rep.profile.values().begin(),
                                       rep.profile.values().end());
    out.push_back({"solver_positivity_min", min_val, 0.0, min_val > 0.0});
    out.push_back({"solver_monotone", rep.monotone_flag ? 1.0 : 0.0, 1.0,
                   rep.monotone_flag});
    auto decay = solver::decay_check(rep.profile, params);
    out.push_back({"solver_tail_decay", decay.rate, 0.0,
                   decay.conclusive && decay.decays});
    // moving-plane sweep on the computed profile: w >= -eps_grid off-center
    auto mp = solver::moving_plane_sweep(rep.profile, geometry::HPoint::origin(params.n),
                                         {1, 0.0}, {-2.0, -1.0, -0.5}, 3000);
    double worst = 0.0;
    for (double m : mp.min_w) worst = std::min(worst, m);
    out.push_back({"moving_plane_min_w", worst, mp.eps_grid, worst >= -mp.eps_grid});
    return out;
}

}  // namespace hyperfrac::checks
