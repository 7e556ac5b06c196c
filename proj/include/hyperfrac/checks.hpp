#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperfrac/params.hpp"

namespace hyperfrac::checks {

// One verified claim: a measured quantity against its tolerance.
struct Claim {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

bool all_pass(const std::vector<Claim>& claims);

// Near-origin and tail laws plus positivity/monotonicity of both kernels.
std::vector<Claim> asymptotics(const ProblemParams& params);

// Agreement of the calibrated closed form with the spectral representation.
Claim spectral_agreement(const ProblemParams& params, double lo = 0.1, double hi = 5.0,
                         int npts = 12);

// fractional_laplacian_radial(green * g) = g on a compact bump.
Claim inversion(const ProblemParams& params, double tol);

// Transform round trip and Plancherel identity on a Gaussian bump.
std::vector<Claim> transform_roundtrip(int n, double tol);

// Direct PV vs spectral fractional Laplacian on a Gaussian bump.
Claim pv_cross_check(const ProblemParams& params, double tol, int radii = 5);

// Sign of the PV fractional Laplacian at a strict interior negative minimum,
// for `count` randomized profiles.
std::vector<Claim> maxprinciple(const ProblemParams& params, int count,
                                std::uint64_t seed);

// HLS ratio below the sharp constant over a bump family; the constant itself
// cross-checked against a second log-gamma implementation.
std::vector<Claim> hls(int n, double lambda_exp, int family = 10);

// Full solve at the given parameters: residual, positivity, monotonicity,
// decay, and a moving-plane sweep of the computed profile.
std::vector<Claim> solver_run(const ProblemParams& params, double rho_max, int nodes,
                              double tol, int max_iter);

}  // namespace hyperfrac::checks
