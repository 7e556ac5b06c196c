#include "hyperfrac/radial_function.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfrac/errors.hpp"

namespace hyperfrac {

std::vector<double> make_grid(double rho_min, double rho_max, int nodes,
                              GridSpacing spacing) {
    if (nodes < 2 || rho_max <= 0.0 || rho_max <= rho_min)
        throw DomainError("degenerate grid request");
    std::vector<double> g(nodes);
    switch (spacing) {
        case GridSpacing::Uniform: {
            double lo = std::max(rho_min, 0.0);
            for (int i = 0; i < nodes; ++i)
                g[i] = lo + (rho_max - lo) * i / (nodes - 1.0);
            break;
        }
        case GridSpacing::Log: {
            if (rho_min <= 0.0) throw DomainError("log grid needs rho_min > 0");
            double l0 = std::log(rho_min), l1 = std::log(rho_max);
            for (int i = 0; i < nodes; ++i)
                g[i] = std::exp(l0 + (l1 - l0) * i / (nodes - 1.0));
            break;
        }
        case GridSpacing::Mixed: {
            // geometric inner section out to the transition radius, uniform after
            double inner = rho_min > 0.0 ? rho_min : 1e-3;
            double transition = std::min(1.0, 0.3 * rho_max);
            int n_in = nodes / 3;
            int n_out = nodes - n_in - 1;
            g[0] = 0.0;
            double l0 = std::log(inner), l1 = std::log(transition);
            for (int i = 0; i < n_in; ++i)
                g[i + 1] = std::exp(l0 + (l1 - l0) * i / std::max(1, n_in - 1));
            for (int i = 1; i <= n_out; ++i)
                g[n_in + i] = transition + (rho_max - transition) * i / n_out;
            break;
        }
    }
    for (size_t i = 1; i < g.size(); ++i)
        if (g[i] <= g[i - 1]) throw DomainError("grid not strictly increasing");
    return g;
}

RadialFunction::RadialFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size() || grid_.size() < 4)
        throw ShapeError("radial function needs matching grid/values, >= 4 nodes");
    if (grid_.front() != 0.0) throw DomainError("radial grid must start at 0");
    for (size_t i = 1; i < grid_.size(); ++i)
        if (grid_[i] <= grid_[i - 1]) throw DomainError("grid not strictly increasing");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("non-finite profile value");
}

RadialFunction RadialFunction::sample(const std::vector<double>& grid,
                                      const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return RadialFunction(grid, std::move(v));
}

int RadialFunction::cell_of(double rho) const {
    auto it = std::upper_bound(grid_.begin(), grid_.end(), rho);
    int i = static_cast<int>(it - grid_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(grid_.size()) - 2);
}

namespace {

// Cubic Lagrange through 4 consecutive nodes; derivative order 0, 1 or 2.
double lagrange4(const double* x, const double* y, double t, int deriv) {
    double out = 0.0;
    for (int i = 0; i < 4; ++i) {
        // value, first and second derivative of the i-th basis polynomial
        double num0 = 1.0, num1 = 0.0, num2 = 0.0, den = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            double d = t - x[j];
            num2 = num2 * d + 2.0 * num1;
            num1 = num1 * d + num0;
            num0 *= d;
            den *= x[i] - x[j];
        }
        double b = deriv == 0 ? num0 : (deriv == 1 ? num1 : num2);
        out += y[i] * b / den;
    }
    return out;
}

}  // namespace

double RadialFunction::operator()(double rho) const {
    rho = std::abs(rho);  // radial profile: even extension through 0
    if (rho > grid_.back()) return 0.0;
    int c = cell_of(rho);
    int i0 = std::clamp(c - 1, 0, static_cast<int>(grid_.size()) - 4);
    return lagrange4(&grid_[i0], &values_[i0], rho, 0);
}

double RadialFunction::deriv1(double rho) const {
    if (rho > grid_.back()) return 0.0;
    int c = cell_of(rho);
    int i0 = std::clamp(c - 1, 0, static_cast<int>(grid_.size()) - 4);
    return lagrange4(&grid_[i0], &values_[i0], rho, 1);
}

double RadialFunction::deriv2(double rho) const {
    if (rho > grid_.back()) return 0.0;
    int c = cell_of(rho);
    int i0 = std::clamp(c - 1, 0, static_cast<int>(grid_.size()) - 4);
    return lagrange4(&grid_[i0], &values_[i0], rho, 2);
}

double RadialFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool RadialFunction::nonincreasing(double tol) const {
    double allow = tol * max_abs();
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] > values_[i - 1] + allow) return false;
    return true;
}

bool RadialFunction::has_decayed_tail(double frac) const {
    return std::abs(values_.back()) <= frac * max_abs();
}

}  // namespace hyperfrac
