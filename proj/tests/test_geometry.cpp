#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfrac/errors.hpp"
#include "hyperfrac/geometry.hpp"

using namespace hyperfrac;
using namespace hyperfrac::geometry;

namespace {

HPoint random_point(std::mt19937_64& rng, int n, double rmax = 3.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double r = rmax * unif(rng);
    std::vector<double> dir(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        dir[i] = gauss(rng);
        norm += dir[i] * dir[i];
    }
    norm = std::sqrt(norm);
    std::vector<double> c(n + 1);
    c[0] = std::cosh(r);
    for (int i = 0; i < n; ++i) c[i + 1] = std::sinh(r) * dir[i] / norm;
    return HPoint(std::move(c));
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("ball point at |x| = 0.5 sits at distance log 3") {
    BallPoint b({0.5, 0.0});
    HPoint h = ball_to_hyperboloid(b);
    CHECK(dist(h, HPoint::origin(2)) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(dist_ball(b, BallPoint({0.0, 0.0})) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("distance vanishes only on the diagonal") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        HPoint a = random_point(rng, 3);
        CHECK(dist(a, a) == 0.0);
        HPoint b = random_point(rng, 3);
        if (std::abs(a[1] - b[1]) > 1e-12) CHECK(dist(a, b) > 0.0);
    }
}

TEST_CASE("distance agrees with the Lorentz inner-product oracle") {
    HPoint a = ball_to_hyperboloid(BallPoint({0.3, 0.0}));
    HPoint b = ball_to_hyperboloid(BallPoint({-0.3, 0.0}));
    double oracle = std::acosh(-lorentz_inner(a, b));
    CHECK(dist(a, b) == doctest::Approx(oracle).epsilon(1e-12));
    // and against the ball-model closed form for the same pair
    CHECK(dist(a, b) ==
          doctest::Approx(dist_ball(BallPoint({0.3, 0.0}), BallPoint({-0.3, 0.0})))
              .epsilon(1e-12));
}

TEST_CASE("model conversions") {
    CHECK(ball_to_hyperboloid(BallPoint({0.0, 0.0, 0.0}))[0] == doctest::Approx(1.0));
    HPoint h = ball_to_hyperboloid(BallPoint({0.5, 0.0, 0.0}));
    CHECK(dist(h, HPoint::origin(3)) == doctest::Approx(std::log(3.0)).epsilon(1e-13));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-0.55, 0.55);
    for (int k = 0; k < 30; ++k) {
        BallPoint b({unif(rng), unif(rng), unif(rng)});
        BallPoint back = hyperboloid_to_ball(ball_to_hyperboloid(b));
        for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("conversions commute with distance") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    for (int k = 0; k < 20; ++k) {
        BallPoint a({unif(rng), unif(rng)});
        BallPoint b({unif(rng), unif(rng)});
        double d1 = dist_ball(a, b);
        double d2 = dist(ball_to_hyperboloid(a), ball_to_hyperboloid(b));
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-10));
    }
}

TEST_CASE("out-of-model ball point rejected") {
    CHECK_THROWS_AS(BallPoint({1.0, 0.2}), InvalidPointError);
}

TEST_CASE("invalid hyperboloid coordinates rejected") {
    CHECK_THROWS_AS(HPoint({1.0, 0.5, 0.0}), InvalidPointError);
}

TEST_CASE("boost basics") {
    Foliation f{1, 0.0};
    HPoint o = HPoint::origin(3);
    HPoint same = boost(0.0, o, f);
    for (int i = 0; i <= 3; ++i) CHECK(same[i] == doctest::Approx(o[i]));

    double t = 0.8;
    HPoint moved = boost(t, o, f);
    CHECK(moved[0] == doctest::Approx(std::cosh(t)).epsilon(1e-14));
    CHECK(moved[1] == doctest::Approx(std::sinh(t)).epsilon(1e-14));
    CHECK(moved[2] == doctest::Approx(0.0));
}

TEST_CASE("boost group law") {
    Foliation f{1, 0.0};
    std::mt19937_64 rng(17);
    for (int k = 0; k < 10; ++k) {
        HPoint p = random_point(rng, 3);
        HPoint ab = boost(0.3, boost(0.4, p, f), f);
        HPoint c = boost(0.7, p, f);
        for (int i = 0; i <= 3; ++i)
            CHECK(ab[i] == doctest::Approx(c[i]).epsilon(1e-12));
    }
}

TEST_CASE("reflection at lambda = 0 flips the first spatial coordinate") {
    Foliation f{1, 0.0};
    std::mt19937_64 rng(19);
    HPoint p = random_point(rng, 3);
    HPoint q = reflect(0.0, p, f);
    CHECK(q[0] == doctest::Approx(p[0]).epsilon(1e-13));
    CHECK(q[1] == doctest::Approx(-p[1]).epsilon(1e-13));
    CHECK(q[2] == doctest::Approx(p[2]).epsilon(1e-13));
}

TEST_CASE("reflection is an involution and an isometry") {
    Foliation f{1, 0.0};
    std::mt19937_64 rng(23);
    for (double lam : {-0.7, 0.0, 1.3}) {
        for (int k = 0; k < 10; ++k) {
            HPoint a = random_point(rng, 3);
            HPoint b = random_point(rng, 3);
            HPoint aa = reflect(lam, reflect(lam, a, f), f);
            for (int i = 0; i <= 3; ++i)
                CHECK(aa[i] == doctest::Approx(a[i]).epsilon(1e-11));
            CHECK(dist(reflect(lam, a, f), reflect(lam, b, f)) ==
                  doctest::Approx(dist(a, b)).epsilon(1e-10));
        }
    }
}

TEST_CASE("reflection fixes its leaf") {
    Foliation f{1, 0.0};
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double lam : {-0.5, 0.9}) {
        for (int k = 0; k < 10; ++k) {
            // a point of U_lambda: boost a point with first spatial coord 0
            double y = unif(rng), z = unif(rng);
            HPoint u({std::sqrt(1.0 + y * y + z * z), 0.0, y, z});
            HPoint leaf_pt = boost(lam, u, f);
            HPoint r = reflect(lam, leaf_pt, f);
            CHECK(dist(r, leaf_pt) < 1e-10);
        }
    }
}

TEST_CASE("boosts preserve distances") {
    Foliation f{2, 0.0};
    std::mt19937_64 rng(31);
    for (int k = 0; k < 15; ++k) {
        HPoint a = random_point(rng, 4);
        HPoint b = random_point(rng, 4);
        CHECK(dist(boost(1.1, a, f), boost(1.1, b, f)) ==
              doctest::Approx(dist(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("triangle inequality on random triples") {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 30; ++k) {
        HPoint a = random_point(rng, 3);
        HPoint b = random_point(rng, 3);
        HPoint c = random_point(rng, 3);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-10);
    }
}

TEST_CASE("radial law of cosines") {
    CHECK(cosh_dist_radial(1.3, 0.0, 2.0) == doctest::Approx(std::cosh(1.3)));
    CHECK(cosh_dist_radial(0.7, 0.7, 0.0) == doctest::Approx(1.0));
    CHECK(cosh_dist_radial(1.0, 2.0, M_PI / 2) ==
          doctest::Approx(std::cosh(1.0) * std::cosh(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(cosh_dist_radial(-1.0, 0.5, 0.1), DomainError);

    // geometric oracle: explicit points at radius r along axis 1 and rp along axis 2
    double r = 1.0, rp = 2.0;
    HPoint a({std::cosh(r), std::sinh(r), 0.0});
    HPoint b({std::cosh(rp), 0.0, std::sinh(rp)});
    CHECK(std::cosh(dist(a, b)) ==
          doctest::Approx(cosh_dist_radial(r, rp, M_PI / 2)).epsilon(1e-12));
    CHECK(radial_pair_distance(r, rp, M_PI / 2) ==
          doctest::Approx(dist(a, b)).epsilon(1e-12));
}

TEST_SUITE_END();
