#pragma once

#include <cmath>

#include "hyperfrac/errors.hpp"

namespace hyperfrac {

// Global problem symbols: dimension n >= 2, fractional order s in (0,1),
// nonlinearity exponent p > 1.
struct ProblemParams {
    int n;
    double s;
    double p;

    ProblemParams(int n_, double s_, double p_ = 2.0) : n(n_), s(s_), p(p_) {
        if (n < 2) throw DomainError("dimension must be >= 2");
        if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order must be in (0,1)");
        if (!(p > 1.0)) throw DomainError("nonlinearity exponent must be > 1");
        if (!(n - 2.0 * s > 0.0)) throw DomainError("need n - 2s > 0");
    }

    double p_star() const { return (n + 2.0 * s) / (n - 2.0 * s); }
    bool subcritical() const { return p < p_star() - 1e-12; }
    bool critical() const { return std::abs(p - p_star()) <= 1e-12; }
    double rho0() const { return 0.5 * (n - 1); }  // spectral gap sqrt
    bool odd() const { return n % 2 == 1; }
};

// Surface area of the unit sphere S^{m}.
double sphere_area(int m);

}  // namespace hyperfrac
