#pragma once

#include <vector>

#include "hyperfrac/jets.hpp"
#include "hyperfrac/params.hpp"
#include "hyperfrac/radial_function.hpp"

namespace hyperfrac::spectral {

// Samples of a spherical-transform image on a nonnegative lambda grid,
// together with the quadrature weights of that grid.
struct SpectralDensity {
    std::vector<double> lambda;
    std::vector<double> values;
    std::vector<double> weights;
    int size() const { return static_cast<int>(lambda.size()); }
};

struct LambdaGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// |c(lambda)|^{-2} from the Harish-Chandra c-function, evaluated in log space
// so large lambda cannot overflow. Even in lambda; vanishes quadratically at 0.
double plancherel_density(int n, double lambda);

// Spherical function L_lambda(rho) normalized to L_lambda(0) = 1. Odd n uses
// the iterated-derivative form of cos(lambda rho); even n an equivalent
// finite-interval cosine representation.
double spherical_function(int n, double lambda, double rho);

// Even-n evaluation through the semi-infinite Abel integral; slower, kept as
// an independent route for cross-checks.
double spherical_function_abel(int n, double lambda, double rho);

// rho-derivative jet of L_lambda for odd n (order <= 4).
jets::Jet spherical_function_jet(int n, double lambda, double rho, int order);

// Constant pairing the forward and inverse radial transforms, fixed by the
// round-trip identity on a reference Gaussian (cached per dimension).
double transform_constant(int n);

// Composite Gauss-Legendre grid on [0, lambda_max] that resolves both the
// Plancherel density near 0 and the oscillation of L_lambda(rho) for
// rho <= rho_osc.
LambdaGrid make_lambda_grid(int n, double lambda_max, double rho_osc);

SpectralDensity spherical_transform(const RadialFunction& f, int n,
                                    const LambdaGrid& grid);
// Adaptive truncation: extends the grid until the multiplier-weighted tail
// drops below 1e-10 of the accumulated mass.
SpectralDensity spherical_transform(const RadialFunction& f, int n);

RadialFunction inverse_spherical_transform(const SpectralDensity& F, int n,
                                           const std::vector<double>& rho_grid);

// Pointwise multiplication by (lambda^2 + (n-1)^2/4)^exponent.
SpectralDensity apply_multiplier(const SpectralDensity& F, int n, double exponent);

// inverse o multiplier(s) o transform on the grid of f.
RadialFunction fractional_laplacian_radial(const RadialFunction& f,
                                           const ProblemParams& params);

// || f ||_{L^2(dV)}^2 for a radial profile.
double radial_l2_squared(const RadialFunction& f, int n);

// Relative defect of the Plancherel identity for f.
double plancherel_defect(const RadialFunction& f, int n);

// Spectral representation of the Green's function. The multiplier is fed
// through its absolutely convergent time-subordination, so the evaluation
// needs no conditionally convergent lambda integral. Calibration oracle for
// the closed-form kernels.
class GreenSpectral {
  public:
    explicit GreenSpectral(const ProblemParams& params);

    double operator()(double rho) const;

    // Heat kernel p_tau(rho) from the same lambda machinery.
    double heat(double tau, double rho) const;

    const ProblemParams& params() const { return params_; }

  private:
    struct LambdaCache {
        std::vector<double> lam2;      // lambda^2 at the nodes
        std::vector<double> weighted;  // GL weight * L * density
    };
    LambdaCache build_cache(double rho, double lambda_max) const;

    ProblemParams params_;
    double kn_;
};

}  // namespace hyperfrac::spectral
