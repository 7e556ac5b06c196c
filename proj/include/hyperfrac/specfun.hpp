#pragma once

#include "hyperfrac/jets.hpp"

namespace hyperfrac::specfun {

// Real Bessel order. Library support window is |nu| <= 5; every use in the
// kernel formulas has nu in (-1/2, 3/2).
struct BesselOrder {
    double nu;
    explicit BesselOrder(double v);
};

// Modified Bessel function of the second kind, K_nu(z), z > 0.
// Underflows to 0 for z beyond ~700 (documented, not an error).
double bessel_k(BesselOrder nu, double z);

// Modified Bessel function of the first kind, I_nu(z), z > 0.
double bessel_i(BesselOrder nu, double z);

// Scaled value e^z K_nu(z); safe far into the exponential tail.
double bessel_k_scaled(BesselOrder nu, double z);

// Derivatives d^k/dz^k K_nu(z) for k = 0..m, via the order recurrence
// K_nu' = -(K_{nu-1} + K_{nu+1})/2 iterated (no numerical differentiation).
jets::Jet bessel_k_jet(BesselOrder nu, double z, int m);

// Same for I_nu (I_nu' = (I_{nu-1} + I_{nu+1})/2).
jets::Jet bessel_i_jet(BesselOrder nu, double z, int m);

// log |Gamma(a + ib)|, accurate to ~1e-12 relative for |a + ib| <= 100.
// Throws DomainError on the real-axis poles a = 0, -1, -2, ... (b = 0).
double log_gamma_complex_abs(double a, double b);

// Real log Gamma for a > 0 through the same Lanczos evaluation; serves as an
// implementation independent of std::lgamma for cross-checks.
double log_gamma_real(double a);

}  // namespace hyperfrac::specfun
