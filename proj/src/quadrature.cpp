#include "hyperfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "hyperfrac/errors.hpp"

namespace hyperfrac::quad {

namespace {

Rule compute_gauss_legendre(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const Rule& gauss_legendre(int order) {
    static std::map<int, Rule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const Rule& r = gauss_legendre(order);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return s * h;
}

double gl_composite(const std::function<double(double)>& f,
                    std::span<const double> breakpoints, int order) {
    double s = 0.0, comp = 0.0;  // Kahan accumulation across panels
    for (size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        double y = gl_panel(f, breakpoints[k], breakpoints[k + 1], order) - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

std::vector<double> geometric_breakpoints(double a, double b, double first_width,
                                          double growth) {
    std::vector<double> bp{a};
    double w = first_width;
    double x = a;
    while (x + w < b) {
        x += w;
        bp.push_back(x);
        w *= growth;
    }
    bp.push_back(b);
    return bp;
}

namespace {

// Gauss-Kronrod 7-15 node/weight pairs (positive half; node 0 first).
// Columns: node, 15-point weight, embedded 7-point Gauss weight (0 for Kronrod-only).
constexpr double gk_nodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double gk_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double gk_wg[8] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct GKResult {
    double value;
    double error;
};

GKResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double f0 = f(c);
    double k = gk_wk[0] * f0;
    double g = gk_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        double x = h * gk_nodes[i];
        double s = f(c + x) + f(c - x);
        k += gk_wk[i] * s;
        g += gk_wg[i] * s;
    }
    k *= h;
    g *= h;
    double err = std::abs(k - g);
    err = 200.0 * err * std::sqrt(std::max(err, 0.0)) * std::sqrt(std::abs(h));
    return {k, std::min(err, std::abs(k - g))};
}

}  // namespace

double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol, double abs_tol, int max_intervals) {
    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    stack.reserve(64);
    double sum = 0.0;
    int used = 0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        GKResult r = gk15(f, s.a, s.b);
        double local_tol = abs_tol * (s.b - s.a) / (b - a) + rel_tol * std::abs(r.value);
        if (r.error <= local_tol || (s.b - s.a) < 1e-14 * (std::abs(s.a) + 1.0)) {
            sum += r.value;
            continue;
        }
        if (++used >= max_intervals)
            throw AccuracyError("adaptive quadrature: interval budget exhausted near [" +
                                std::to_string(s.a) + ", " + std::to_string(s.b) + "]");
        double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
    }
    return sum;
}

void UniformCubic::build(double a, double b, int count,
                         const std::function<double(double)>& f) {
    lo = a;
    dx = (b - a) / (count - 1);
    v.resize(count);
    for (int i = 0; i < count; ++i) v[i] = f(a + i * dx);
}

double UniformCubic::operator()(double x) const {
    double t = (x - lo) / dx;
    int i = std::clamp(static_cast<int>(t) - 1, 0, static_cast<int>(v.size()) - 4);
    double u = t - i;
    double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return w0 * v[i] + w1 * v[i + 1] + w2 * v[i + 2] + w3 * v[i + 3];
}

double decaying_tail(const std::function<double(double)>& f, double a, double first_width,
                     double rel_tol, double abs_tol, int order, double growth,
                     int max_panels) {
    double x = a, w = first_width;
    double sum = 0.0, comp = 0.0;
    int quiet = 0;
    for (int k = 0; k < max_panels; ++k) {
        double p = gl_panel(f, x, x + w, order);
        double y = p - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        x += w;
        w *= growth;
        if (std::abs(p) <= rel_tol * std::abs(sum) + abs_tol) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    throw AccuracyError("decaying_tail: no convergence after max panels (last x = " +
                        std::to_string(x) + ")");
}

}  // namespace hyperfrac::quad
