#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hyperfrac::quad {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of the given order (cached; thread-safe).
const Rule& gauss_legendre(int order);

// Integral of f over [a, b] with one Gauss-Legendre panel.
double gl_panel(const std::function<double(double)>& f, double a, double b, int order = 16);

// Integral of f over consecutive panels given by breakpoints.
double gl_composite(const std::function<double(double)>& f,
                    std::span<const double> breakpoints, int order = 16);

// Breakpoints a = b0 < b1 < ... < bk = b with first panel ~first_width and
// geometric growth. Always includes the endpoint b.
std::vector<double> geometric_breakpoints(double a, double b, double first_width,
                                          double growth = 1.6);

// Adaptive Gauss-Kronrod 7-15. Throws AccuracyError when the interval budget
// is exhausted before reaching tolerance.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-10, double abs_tol = 0.0, int max_intervals = 4000);

// Semi-infinite integral of a decaying integrand: geometric panels from a,
// stopping once three consecutive panel contributions fall below
// rel_tol * |accumulated| + abs_tol. first_width sets the initial resolution.
double decaying_tail(const std::function<double(double)>& f, double a, double first_width,
                     double rel_tol = 1e-12, double abs_tol = 0.0, int order = 16,
                     double growth = 1.5, int max_panels = 400);

// Cubic interpolation of samples on a uniform grid.
struct UniformCubic {
    double lo = 0.0, dx = 1.0;
    std::vector<double> v;

    void build(double a, double b, int count, const std::function<double(double)>& f);
    double operator()(double x) const;
};

}  // namespace hyperfrac::quad
