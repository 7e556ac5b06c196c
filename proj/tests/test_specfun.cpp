#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfrac/errors.hpp"
#include "hyperfrac/specfun.hpp"

using namespace hyperfrac;
using namespace hyperfrac::specfun;

TEST_SUITE_BEGIN("specfun");

TEST_CASE("half-integer closed forms") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}, I_{1/2}(z) = sqrt(2/(pi z)) sinh z
    CHECK(bessel_k(BesselOrder(0.5), 1.0) ==
          doctest::Approx(std::sqrt(M_PI / 2.0) * std::exp(-1.0)).epsilon(1e-13));
    CHECK(bessel_i(BesselOrder(0.5), 1.0) ==
          doctest::Approx(std::sqrt(2.0 / M_PI) * std::sinh(1.0)).epsilon(1e-13));
    for (double z : {0.3, 2.7, 9.0}) {
        CHECK(bessel_k(BesselOrder(0.5), z) ==
              doctest::Approx(std::sqrt(M_PI / (2.0 * z)) * std::exp(-z)).epsilon(1e-13));
        CHECK(bessel_k(BesselOrder(1.5), z) ==
              doctest::Approx(std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) * (1.0 + 1.0 / z))
                  .epsilon(1e-13));
    }
}

TEST_CASE("small-argument leading terms") {
    double nu = 0.3, z = 1e-8;
    double limit = std::tgamma(nu) / 2.0 * std::pow(2.0, nu);
    CHECK(std::pow(z, nu) * bessel_k(BesselOrder(nu), z) ==
          doctest::Approx(limit).epsilon(1e-4));
    double lead = std::pow(z / 2.0, nu) / std::tgamma(nu + 1.0);
    CHECK(bessel_i(BesselOrder(nu), z) == doctest::Approx(lead).epsilon(1e-6));
}

TEST_CASE("large-argument laws") {
    double nu = 0.3, z = 50.0;
    CHECK(bessel_k(BesselOrder(nu), z) * std::exp(z) * std::sqrt(2.0 * z / M_PI) ==
          doctest::Approx(1.0).epsilon(1e-3));
    // scaled evaluation agrees and survives far beyond the underflow point
    CHECK(bessel_k_scaled(BesselOrder(nu), z) ==
          doctest::Approx(bessel_k(BesselOrder(nu), z) * std::exp(z)).epsilon(1e-12));
    CHECK(bessel_k_scaled(BesselOrder(nu), 2000.0) > 0.0);
    CHECK(bessel_k(BesselOrder(nu), 800.0) == 0.0);  // documented underflow
}

TEST_CASE("wronskian of the modified pair") {
    for (double z : {0.5, 1.0, 5.0}) {
        for (double nu : {0.2, 0.5, 1.3}) {
            auto kj = bessel_k_jet(BesselOrder(nu), z, 1);
            auto ij = bessel_i_jet(BesselOrder(nu), z, 1);
            double w = ij[0] * kj[1] - ij[1] * kj[0];
            CHECK(w == doctest::Approx(-1.0 / z).epsilon(1e-11));
        }
    }
}

TEST_CASE("evenness and order recurrence") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unu(0.05, 3.0), uz(0.1, 40.0);
    for (int k = 0; k < 40; ++k) {
        double nu = unu(rng), z = uz(rng);
        CHECK(bessel_k(BesselOrder(nu), z) ==
              doctest::Approx(bessel_k(BesselOrder(-nu), z)).epsilon(1e-10));
        double lhs = bessel_k(BesselOrder(nu + 1.0), z);
        double rhs = bessel_k(BesselOrder(nu - 1.0), z) +
                     2.0 * nu / z * bessel_k(BesselOrder(nu), z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("jet entries are derivatives") {
    // K_0' = -K_1
    auto j = bessel_k_jet(BesselOrder(0.0), 1.0, 1);
    CHECK(j[1] == doctest::Approx(-bessel_k(BesselOrder(1.0), 1.0)).epsilon(1e-12));

    // Richardson-extrapolated central differences for orders up to 4
    for (double nu : {0.25, 1.1}) {
        auto jet = bessel_k_jet(BesselOrder(nu), 2.3, 4);
        CHECK(jet[0] == doctest::Approx(bessel_k(BesselOrder(nu), 2.3)).epsilon(1e-13));
        for (int k = 1; k <= 4; ++k) {
            auto d = [&](double z) { return bessel_k_jet(BesselOrder(nu), z, k - 1)[k - 1]; };
            double h = 1e-3;
            double c1 = (d(2.3 + h) - d(2.3 - h)) / (2 * h);
            double c2 = (d(2.3 + h / 2) - d(2.3 - h / 2)) / h;
            double rich = (4.0 * c2 - c1) / 3.0;
            CHECK(jet[k] == doctest::Approx(rich).epsilon(1e-6));
        }
    }

    // trivial m = 0 jet
    auto j0 = bessel_k_jet(BesselOrder(0.7), 0.4, 0);
    CHECK(j0.order() == 0);
    CHECK(j0[0] == doctest::Approx(bessel_k(BesselOrder(0.7), 0.4)).epsilon(1e-13));

    CHECK_THROWS_AS(bessel_k_jet(BesselOrder(0.5), 1.0, 13), UnsupportedOrderError);
}

TEST_CASE("jets satisfy the modified Bessel equation") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unu(0.05, 2.0), uz(0.2, 20.0);
    for (int k = 0; k < 25; ++k) {
        double nu = unu(rng), z = uz(rng);
        auto kj = bessel_k_jet(BesselOrder(nu), z, 2);
        double resid = z * z * kj[2] + z * kj[1] - (z * z + nu * nu) * kj[0];
        CHECK(std::abs(resid) <=
              1e-9 * (z * z + nu * nu) * std::max(std::abs(kj[0]), 1e-300));
        auto ij = bessel_i_jet(BesselOrder(nu), z, 2);
        double resid_i = z * z * ij[2] + z * ij[1] - (z * z + nu * nu) * ij[0];
        CHECK(std::abs(resid_i) <= 1e-9 * (z * z + nu * nu) * std::abs(ij[0]));
    }
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(bessel_k(BesselOrder(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(bessel_k(BesselOrder(0.5), -1.0), DomainError);
    CHECK_THROWS_AS(BesselOrder(5.5), DomainError);
}

TEST_CASE("complex log gamma modulus") {
    CHECK(log_gamma_complex_abs(4.0, 0.0) == doctest::Approx(std::log(6.0)).epsilon(1e-13));
    // |Gamma(i b)|^2 = pi / (b sinh(pi b))
    double b = 1.0;
    CHECK(std::exp(2.0 * log_gamma_complex_abs(0.0, b)) ==
          doctest::Approx(M_PI / (b * std::sinh(M_PI * b))).epsilon(1e-12));
    // |Gamma(1/2 + i)|^2 = pi / cosh(pi)
    CHECK(std::exp(2.0 * log_gamma_complex_abs(0.5, 1.0)) ==
          doctest::Approx(M_PI / std::cosh(M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma_complex_abs(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(log_gamma_complex_abs(-3.0, 0.0), DomainError);
}

TEST_CASE("log gamma cross-check against the C library") {
    for (double a = 0.1; a < 30.0; a += 0.37)
        CHECK(log_gamma_real(a) == doctest::Approx(std::lgamma(a)).epsilon(1e-12));
}

TEST_SUITE_END();
