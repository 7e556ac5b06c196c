#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace hyperfrac {

inline double fit_slope(std::span<const double> x, std::span<const double> y) {
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

// Least-squares slope of log f against log rho over [lo, hi].
inline double fit_loglog_slope(const std::function<double(double)>& f, double lo,
                               double hi, int npts = 9) {
    std::vector<double> xs(npts), ys(npts);
    for (int i = 0; i < npts; ++i) {
        double r = lo * std::pow(hi / lo, i / (npts - 1.0));
        xs[i] = std::log(r);
        ys[i] = std::log(std::abs(f(r)));
    }
    return fit_slope(xs, ys);
}

}  // namespace hyperfrac
