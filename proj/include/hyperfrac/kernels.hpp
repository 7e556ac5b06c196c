#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hyperfrac/jets.hpp"
#include "hyperfrac/params.hpp"

namespace hyperfrac::kernels {

// Normalization bundle shared by the kernel pair.
//   c1:    prefactor of the singular-kernel Bessel form
//   c_ns:  constant pairing that kernel with the principal-value integral so
//          the operator matches the spectral multiplier (lambda^2 + rho0^2)^s
//   alpha: Green's function scale, calibrated against the spectral
//          representation
//   dn:    Plancherel constant (2^{3-n} pi |S^{n-1}|)^{-1}
struct KernelConstants {
    double c_ns = 0.0;
    double c1 = 0.0;
    double alpha = 0.0;
    double dn = 0.0;
};

// Abel-type reduction integral: int_rho^inf sinh r (cosh r - cosh rho)^{-1/2}
// F(r) dr, with the endpoint singularity removed by the substitution
// t = cosh r - cosh rho, t = w^2. F must decay at least exponentially;
// r_scale sets the resolution of the innermost panels.
double abel_integral(const std::function<double(double)>& F, double rho,
                     double r_scale = 0.25, double rel_tol = 1e-12);

// (sign d/drho / sinh rho)^m of rho^{power} K_bessel_order(rho0 * rho),
// the profile family behind both kernels. Unnormalized.
double bessel_profile_operator(int n, double power, double bessel_order, double rho,
                               int sign);

// Unnormalized Green profile: the (n-1)/2-fold operator form for odd n, its
// Abel integral for even n. Positive for rho > 0.
double green_unnormalized(int n, double s, double rho);

// Unnormalized singular-kernel profile (orders shifted by +s instead of -s).
double kernel_unnormalized(int n, double s, double rho);

struct FlaggedValue {
    double value = 0.0;
    bool underflow = false;
};

// Green's function of the fractional Laplacian, calibrated so it agrees with
// the spectral representation. Immutable after construction; pointwise
// evaluation is safe to call concurrently.
class GreenEvaluator {
  public:
    explicit GreenEvaluator(const ProblemParams& params);

    double operator()(double rho) const;
    FlaggedValue eval_flagged(double rho) const;

    const KernelConstants& constants() const { return consts_; }
    const ProblemParams& params() const { return params_; }
    double underflow_threshold() const { return 700.0 / (params_.n - 1.0); }

  private:
    ProblemParams params_;
    KernelConstants consts_;
};

// Combined PV kernel c_ns * K_{n,s}(rho): the weight against which
// int (u(x) - u(xi)) ... d xi reproduces the fractional Laplacian.
class SingularKernelEvaluator {
  public:
    explicit SingularKernelEvaluator(const ProblemParams& params);

    double operator()(double rho) const;          // combined, PV-normalized
    double profile(double rho) const;             // c1 * Bessel form only
    const KernelConstants& constants() const { return consts_; }
    const ProblemParams& params() const { return params_; }

  private:
    ProblemParams params_;
    KernelConstants consts_;
};

// One-point spectral matching at rho* = 1 with a constancy check across
// [0.1, 5]; throws CalibrationError when the ratio is not constant.
KernelConstants calibrate_normalization(const ProblemParams& params);

// Convenience pointwise entry points (evaluators cached per (n, s)).
double green(const ProblemParams& params, double rho);
double singular_kernel(const ProblemParams& params, double rho);
std::shared_ptr<const GreenEvaluator> shared_green(const ProblemParams& params);
std::shared_ptr<const SingularKernelEvaluator> shared_kernel(const ProblemParams& params);

// Dense log-log cubic tabulation of a positive radial kernel, with power-law
// extension below the table and the exact tail law beyond it. Used by the
// operator-matrix assembly where millions of evaluations are needed.
class TabulatedKernel {
  public:
    TabulatedKernel(const std::function<double(double)>& f, double rho_lo, double rho_hi,
                    int points, double tail_rate);

    double operator()(double rho) const;

  private:
    double lo_, hi_, dx_, tail_rate_;
    double slope_lo_ = 0.0;
    std::vector<double> logv_;  // log f at log-spaced nodes
};

}  // namespace hyperfrac::kernels
