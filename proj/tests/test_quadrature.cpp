#include <doctest.h>

#include <cmath>

#include "hyperfrac/errors.hpp"
#include "hyperfrac/quadrature.hpp"

using namespace hyperfrac;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int order : {4, 8, 16}) {
        // degree 2*order - 1 is exact
        int deg = 2 * order - 1;
        double got = quad::gl_panel([&](double x) { return std::pow(x, deg); }, 0.0, 1.0,
                                    order);
        CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
    }
}

TEST_CASE("gl panel on exp") {
    double got = quad::gl_panel([](double x) { return std::exp(x); }, -1.0, 2.0, 16);
    CHECK(got == doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("adaptive handles a mild endpoint singularity") {
    double got = quad::adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0,
                                1e-10);
    CHECK(got == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("adaptive throws when budget exhausted") {
    CHECK_THROWS_AS(quad::adaptive([](double x) { return std::sin(1.0 / x) / x; }, 1e-300,
                                   1.0, 1e-14, 0.0, 8),
                    AccuracyError);
}

TEST_CASE("decaying tail integrates exp(-x)") {
    double got =
        quad::decaying_tail([](double x) { return std::exp(-x); }, 0.0, 0.25, 1e-13);
    CHECK(got == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geometric breakpoints cover the interval") {
    auto bp = quad::geometric_breakpoints(0.0, 10.0, 0.1, 1.5);
    CHECK(bp.front() == 0.0);
    CHECK(bp.back() == 10.0);
    for (size_t i = 1; i < bp.size(); ++i) CHECK(bp[i] > bp[i - 1]);
}

TEST_CASE("uniform cubic reproduces a cubic exactly") {
    quad::UniformCubic c;
    auto f = [](double x) { return 1.0 + x * (2.0 + x * (-0.5 + 0.25 * x)); };
    c.build(0.0, 4.0, 33, f);
    for (double x : {0.13, 1.7, 2.99, 3.9}) CHECK(c(x) == doctest::Approx(f(x)).epsilon(1e-13));
}

TEST_SUITE_END();
