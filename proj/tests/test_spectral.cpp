#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfrac/checks.hpp"
#include "hyperfrac/errors.hpp"
#include "hyperfrac/jets.hpp"
#include "hyperfrac/kernels.hpp"
#include "hyperfrac/quadrature.hpp"
#include "hyperfrac/spectral.hpp"

using namespace hyperfrac;
using namespace hyperfrac::spectral;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("plancherel density: evenness, n = 3 closed form, quadratic origin") {
    for (double lam : {0.3, 1.7, 8.0}) {
        CHECK(plancherel_density(4, lam) ==
              doctest::Approx(plancherel_density(4, -lam)).epsilon(1e-14));
        // n = 3: the Gamma factors collapse to lambda^2 / 4 exactly
        CHECK(plancherel_density(3, lam) ==
              doctest::Approx(lam * lam).epsilon(1e-10));
    }
    CHECK(plancherel_density(3, 0.0) == 0.0);
    for (int n : {3, 4, 5}) {
        double r1 = plancherel_density(n, 1e-3) / 1e-6;
        double r2 = plancherel_density(n, 1e-4) / 1e-8;
        CHECK(r1 == doctest::Approx(r2).epsilon(1e-3));  // vanishes quadratically
    }
}

TEST_CASE("spherical function normalization and closed form") {
    CHECK(spherical_function(3, 1.3, 0.0) == 1.0);
    CHECK(spherical_function(4, 0.7, 0.0) == 1.0);
    for (double lam : {0.4, 2.0}) {
        for (double rho : {0.3, 1.1, 4.0}) {
            double want = std::sin(lam * rho) / (lam * std::sinh(rho));
            CHECK(spherical_function(3, lam, rho) ==
                  doctest::Approx(want).epsilon(1e-12));
        }
    }
    // small-rho expansion L = 1 - (lam^2 + rho0^2) rho^2 / (2n) + O(rho^4)
    for (int n : {2, 3, 4, 5}) {
        double lam = 0.9, rho = 1e-4;
        double ev = lam * lam + std::pow(0.5 * (n - 1), 2);
        double want = 1.0 - ev * rho * rho / (2.0 * n);
        CHECK(spherical_function(n, lam, rho) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("spherical functions solve the radial eigen-equation") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ulam(0.2, 5.0), urho(0.3, 3.0);
    for (int n : {3, 5}) {
        for (int k = 0; k < 8; ++k) {
            double lam = ulam(rng), rho = urho(rng);
            auto jet = spherical_function_jet(n, lam, rho, 2);
            double ev = lam * lam + std::pow(0.5 * (n - 1), 2);
            double resid = jet[2] + (n - 1.0) / std::tanh(rho) * jet[1] + ev * jet[0];
            CHECK(std::abs(resid) < 1e-7 * std::max(1.0, ev));
        }
    }
    for (int n : {2, 4}) {
        for (int k = 0; k < 5; ++k) {
            double lam = ulam(rng), rho = urho(rng);
            auto L = [&](double r) { return spherical_function(n, lam, r); };
            double h = 1e-3;
            double d1 = (L(rho + h) - L(rho - h)) / (2 * h);
            double d1b = (L(rho + h / 2) - L(rho - h / 2)) / h;
            double deriv1 = (4 * d1b - d1) / 3.0;
            double d2 = (L(rho + h) - 2 * L(rho) + L(rho - h)) / (h * h);
            double d2b = (L(rho + h / 2) - 2 * L(rho) + L(rho - h / 2)) / (h * h / 4);
            double deriv2 = (4 * d2b - d2) / 3.0;
            double ev = lam * lam + std::pow(0.5 * (n - 1), 2);
            double resid = deriv2 + (n - 1.0) / std::tanh(rho) * deriv1 + ev * L(rho);
            CHECK(std::abs(resid) < 1e-6 * std::max(1.0, ev));
        }
    }
}

TEST_CASE("weighted derivative identity behind the monotonicity proof") {
    // (sinh^{n-1} L')' = -(lam^2 + rho0^2) sinh^{n-1} L
    for (int n : {3, 5}) {
        for (double lam : {0.6, 2.3}) {
            for (double rho : {0.4, 1.5}) {
                auto jet = spherical_function_jet(n, lam, rho, 2);
                double sh = std::sinh(rho), ch = std::cosh(rho);
                double lhs = (n - 1.0) * std::pow(sh, n - 2) * ch * jet[1] +
                             std::pow(sh, n - 1) * jet[2];
                double ev = lam * lam + std::pow(0.5 * (n - 1), 2);
                double rhs = -ev * std::pow(sh, n - 1) * jet[0];
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("even spherical function: finite-interval route matches the Abel route") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ulam(0.1, 6.0), urho(0.2, 3.5);
    for (int n : {2, 4}) {
        for (int k = 0; k < 6; ++k) {
            double lam = ulam(rng), rho = urho(rng);
            double md = spherical_function(n, lam, rho);
            double abel = spherical_function_abel(n, lam, rho);
            CHECK(md == doctest::Approx(abel).epsilon(1e-9));
        }
    }
}

TEST_CASE("zero profile transforms to the zero spectrum") {
    auto grid = make_grid(0.0, 6.0, 101, GridSpacing::Uniform);
    RadialFunction f = RadialFunction::sample(grid, [](double) { return 0.0; });
    auto F = spherical_transform(f, 3);
    for (double v : F.values) CHECK(v == 0.0);
    RadialFunction back = inverse_spherical_transform(F, 3, grid);
    for (double v : back.values()) CHECK(v == 0.0);
}

TEST_CASE("transform requires decay") {
    auto grid = make_grid(0.0, 4.0, 64, GridSpacing::Uniform);
    RadialFunction f = RadialFunction::sample(grid, [](double) { return 1.0; });
    CHECK_THROWS_AS(spherical_transform(f, 3), TransformDivergenceError);
}

TEST_CASE("round trip and Plancherel on the reference Gaussian") {
    for (int n : {3, 2}) {
        auto claims = checks::transform_roundtrip(n, 1e-4);
        for (const auto& c : claims) {
            INFO(c.name, " measured ", c.measured);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("multiplier algebra") {
    auto grid = make_grid(0.0, 8.0, 161, GridSpacing::Uniform);
    RadialFunction f =
        RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
    auto F = spherical_transform(f, 3);
    auto same = apply_multiplier(F, 3, 0.0);
    for (int q = 0; q < F.size(); ++q) CHECK(same.values[q] == F.values[q]);
    auto twice = apply_multiplier(apply_multiplier(F, 3, 0.5), 3, -0.5);
    for (int q = 0; q < F.size(); ++q)
        CHECK(twice.values[q] == doctest::Approx(F.values[q]).epsilon(1e-14));
}

TEST_CASE("multiplier exponent one reproduces the radial Laplace-Beltrami") {
    int n = 3;
    auto grid = make_grid(0.0, 9.0, 321, GridSpacing::Uniform);
    RadialFunction f =
        RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
    auto F = spherical_transform(f, n);
    auto Fm = apply_multiplier(F, n, 1.0);
    RadialFunction lap = inverse_spherical_transform(Fm, n, grid);
    // analytic oracle: -(f'' + (n-1) coth(rho) f') for the Gaussian
    double worst = 0.0;
    for (double r = 0.4; r <= 4.0; r += 0.45) {
        double g = std::exp(-r * r);
        double d1 = -2.0 * r * g, d2 = (4.0 * r * r - 2.0) * g;
        double want = -(d2 + (n - 1.0) / std::tanh(r) * d1);
        worst = std::max(worst, std::abs(lap(r) - want));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("fractional laplacian of zero is zero") {
    auto grid = make_grid(0.0, 6.0, 101, GridSpacing::Uniform);
    RadialFunction f = RadialFunction::sample(grid, [](double) { return 0.0; });
    ProblemParams params(3, 0.5);
    auto out = fractional_laplacian_radial(f, params);
    for (double v : out.values()) CHECK(v == 0.0);
}

TEST_CASE("heat kernel matches the closed form in three dimensions") {
    ProblemParams params(3, 0.5);
    GreenSpectral gs(params);
    for (auto [t, rho] : {std::pair{0.3, 0.7}, {1.0, 2.0}, {0.15, 0.4}}) {
        double want = std::pow(4.0 * M_PI * t, -1.5) * rho / std::sinh(rho) *
                      std::exp(-t - rho * rho / (4.0 * t));
        CHECK(gs.heat(t, rho) == doctest::Approx(want).epsilon(1e-7));
    }
}

TEST_CASE("even heat kernel matches the Abel form with its closed constant") {
    // p_t = sqrt(2) (2 pi)^{-n/2} (4 pi t)^{-1/2} e^{-rho0^2 t} *
    //       Abel[(-d/dr / sinh)^{n/2} e^{-r^2/(4t)}](rho)
    for (int n : {2, 4}) {
        ProblemParams params(n, 0.3);
        GreenSpectral gs(params);
        double t = 0.7, rho = 1.3;
        double inv4t = 1.0 / (4.0 * t);
        jets::JetProducer gauss = [inv4t](double r, int m) {
            return jets::gaussian_jet(inv4t, r, m);
        };
        auto F = [&](double r) {
            return jets::iterated_operator(gauss, n / 2, r, -1);
        };
        double abel = kernels::abel_integral(F, rho, std::sqrt(t) / 3.0);
        double r0 = params.rho0();
        double want = std::sqrt(2.0) * std::pow(2.0 * M_PI, -0.5 * n) *
                      std::pow(4.0 * M_PI * t, -0.5) * std::exp(-r0 * r0 * t) * abel;
        CHECK(gs.heat(t, rho) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("heat kernel has unit mass") {
    ProblemParams params(3, 0.5);
    GreenSpectral gs(params);
    double t = 0.8;
    std::vector<double> bp{1e-4};
    while (bp.back() < 14.0) bp.push_back(bp.back() + 0.25);
    double mass = sphere_area(2) * quad::gl_composite(
                                       [&](double rho) {
                                           return gs.heat(t, rho) *
                                                  std::pow(std::sinh(rho), 2);
                                       },
                                       bp, 8);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("spectral Green: monotone, correct origin slope") {
    ProblemParams params(3, 0.5);
    GreenSpectral gs(params);
    double prev = 1e300;
    for (double rho = 0.2; rho <= 4.0; rho += 0.2) {
        double v = gs(rho);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    double slope = std::log(gs(0.02) / gs(0.05)) / std::log(0.02 / 0.05);
    CHECK(slope == doctest::Approx(-(params.n - 2.0 * params.s)).epsilon(0.05));
}

TEST_SUITE_END();
