#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hyperfrac/geometry.hpp"
#include "hyperfrac/params.hpp"
#include "hyperfrac/radial_function.hpp"

namespace hyperfrac::solver {

// Nodal operator matrix for (T v)(r_i) = int G(rho(x_i, y)) v(|y|) dV_y.
// Off-diagonal weights come from the ring kernel at node pairs (symmetric in
// the hat-mass weighting by construction); each diagonal entry carries the
// remainder of an independently integrated row so that T(1) is exact up to
// quadrature tolerance on the truncated domain.
struct RadialOperatorMatrix {
    std::vector<double> grid;
    std::vector<double> masses;   // m_j = int hat_j sinh^{n-1}
    std::vector<double> entries;  // row-major A[i*N + j]
    int n = 0;                    // dimension
    double s = 0.0;

    int size() const { return static_cast<int>(grid.size()); }
    double at(int i, int j) const { return entries[static_cast<size_t>(i) * grid.size() + j]; }
    std::vector<double> apply(const std::vector<double>& v) const;
};

// Angular ring integral omega_{n-2} int_0^pi G(rho(r, rp, theta))
// sin^{n-2}(theta) d theta for a radial kernel G.
double ring_integral(int n, const std::function<double(double)>& radial_kernel, double r,
                     double rp);

RadialOperatorMatrix radial_green_matrix(const ProblemParams& params,
                                         const std::vector<double>& grid,
                                         bool parallel = true);

struct SolveOptions {
    double tol = 1e-9;
    int max_iter = 400;
    std::optional<std::vector<double>> initial;  // defaults to exp(-r)
};

struct SolveReport {
    RadialFunction profile;  // amplitude folded in: u = mu^{-1/(p-1)} v
    double amplitude = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool monotone_flag = false;
    bool converged = false;
    bool critical_flagged = false;
};

SolveReport picard_solve(const ProblemParams& params, const std::vector<double>& grid,
                         double tol, int max_iter,
                         const std::optional<std::vector<double>>& initial = {});

// Relative sup-norm of u - T(u^p) over the grid; 0 for the zero profile.
double residual(const RadialFunction& u, const ProblemParams& params,
                const RadialOperatorMatrix& matrix);

// Principal-value evaluation of the singular-integral fractional Laplacian of
// a radial profile at the point x.
double direct_fractional_laplacian(const RadialFunction& u, const ProblemParams& params,
                                   const geometry::HPoint& x);

// Convolution against the calibrated Green's function at the given radii,
// via direct 2D quadrature (independent of the operator matrix).
std::vector<double> green_convolve(const ProblemParams& params, const RadialFunction& g,
                                   const std::vector<double>& targets);

struct MovingPlaneReport {
    std::vector<double> lambdas;
    std::vector<double> min_w;             // per lambda
    std::vector<double> negative_measure;  // per lambda, volume estimate
    int samples_per_leaf = 0;
    double eps_grid = 0.0;  // interpolation-noise threshold used
};

MovingPlaneReport moving_plane_sweep(const RadialFunction& u,
                                     const geometry::HPoint& center,
                                     const geometry::Foliation& f,
                                     const std::vector<double>& lambdas,
                                     int samples = 4000, std::uint64_t seed = 20240901);

struct DecayReport {
    bool decays = false;
    double rate = 0.0;
    bool conclusive = false;
};

DecayReport decay_check(const RadialFunction& u, const ProblemParams& params);

// Hardy-Littlewood-Sobolev diagnostics with kernel (2 sinh(rho/2))^{-lambda}.
double hls_ratio(const RadialFunction& f, const RadialFunction& g, int n,
                 double lambda_exp);
double hls_constant(int n, double lambda_exp);

}  // namespace hyperfrac::solver
