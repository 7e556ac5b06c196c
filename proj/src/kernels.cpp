#include "hyperfrac/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "hyperfrac/quadrature.hpp"
#include "hyperfrac/specfun.hpp"
#include "hyperfrac/spectral.hpp"

namespace hyperfrac {

double sphere_area(int m) {
    // |S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
    return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

}  // namespace hyperfrac

namespace hyperfrac::kernels {

namespace {

// Jet of K_order(rho0 * rho) in rho.
jets::Jet k_arg_jet(double order, double rho0, double rho, int m) {
    jets::Jet kz = specfun::bessel_k_jet(specfun::BesselOrder(order), rho0 * rho, m);
    jets::Jet out(rho, m);
    double c = 1.0;
    for (int k = 0; k <= m; ++k) {
        out[k] = kz[k] * c;
        c *= rho0;
    }
    return out;
}

int operator_power(int n) { return n % 2 == 1 ? (n - 1) / 2 : n / 2; }

// Subordination prefactor shared by the Green/kernel normalizations:
// odd n: ((2 pi)^{(n-1)/2} sqrt(pi))^{-1}; even n carries the Abel sqrt(2).
double heat_base(int n) {
    if (n % 2 == 1) return 1.0 / (std::pow(2.0 * M_PI, 0.5 * (n - 1)) * std::sqrt(M_PI));
    return std::sqrt(2.0) / (std::pow(2.0 * M_PI, 0.5 * n) * std::sqrt(M_PI));
}

double minus_gamma_minus_s(double s) {  // -Gamma(-s) = Gamma(1-s)/s > 0
    return std::tgamma(1.0 - s) / s;
}

struct CacheKey {
    int n;
    double s;
    bool operator<(const CacheKey& o) const {
        return n != o.n ? n < o.n : s < o.s;
    }
};

}  // namespace

double abel_integral(const std::function<double(double)>& F, double rho, double r_scale,
                     double rel_tol) {
    if (rho < 0.0) throw DomainError("abel_integral needs rho >= 0");
    double u0 = 2.0 * std::pow(std::sinh(0.5 * rho), 2);  // cosh rho - 1, stable
    auto integrand = [&](double w) {
        double u = u0 + w * w;
        double r = std::log1p(u + std::sqrt(u * (u + 2.0)));
        return F(r);
    };
    double w1 = std::sqrt(std::sinh(rho) * r_scale + r_scale * r_scale);
    return 2.0 * quad::decaying_tail(integrand, 0.0, w1, rel_tol, 0.0, 16, 1.4, 300);
}

double bessel_profile_operator(int n, double power, double bessel_order, double rho,
                               int sign) {
    if (rho <= 0.0) throw DomainError("profile operator needs rho > 0");
    double rho0 = 0.5 * (n - 1);
    int m = operator_power(n);
    jets::JetProducer source = [=](double r, int ord) {
        return jets::power_jet(power, r, ord) * k_arg_jet(bessel_order, rho0, r, ord);
    };
    return jets::iterated_operator(source, m, rho, sign);
}

namespace {

double profile_scale(int n, double s, double sgn_exp, double rho) {
    // shared evaluation for the Green (sgn_exp = -1) and kernel (+1) families
    double power = sgn_exp > 0 ? -(0.5 + s) : (s - 0.5);
    double order = sgn_exp > 0 ? (0.5 + s) : (s - 0.5);
    if (n % 2 == 1) return bessel_profile_operator(n, power, order, rho, -1);
    double scale = std::clamp(rho / 4.0, 1e-6, 0.25);
    double val = abel_integral(
        [&](double r) { return bessel_profile_operator(n, power, order, r, -1); }, rho,
        scale);
    return sgn_exp > 0 ? val / std::sqrt(M_PI) : val;
}

}  // namespace

double green_unnormalized(int n, double s, double rho) {
    return profile_scale(n, s, -1.0, rho);
}

double kernel_unnormalized(int n, double s, double rho) {
    return profile_scale(n, s, +1.0, rho);
}

KernelConstants calibrate_normalization(const ProblemParams& params) {
    KernelConstants c;
    const int n = params.n;
    const double s = params.s;
    c.dn = 1.0 / (std::pow(2.0, 3 - n) * M_PI * sphere_area(n - 1));
    c.c1 = 1.0 / (std::pow(2.0, n - 2 + 2.0 * s) * std::tgamma(0.5 * (n - 1)) *
                  std::tgamma(0.5 + s));
    // PV pairing constant: subordination in time against the heat semigroup.
    double a_kernel = heat_base(n) * std::pow(n - 1.0, s + 0.5) / minus_gamma_minus_s(s);
    if (n % 2 == 0) a_kernel *= std::sqrt(M_PI);  // even profile carries 1/sqrt(pi)
    c.c_ns = a_kernel / c.c1;

    // Green scale by one-point spectral matching at rho* = 1.
    spectral::GreenSpectral gs(params);
    double g0 = green_unnormalized(n, s, 1.0);
    if (g0 == 0.0) throw CalibrationError("closed-form profile vanished at rho* = 1");
    c.alpha = gs(1.0) / g0;

    const double guard = params.odd() ? 1e-6 : 1e-5;
    for (double rho : {0.1, 0.5, 2.0, 5.0}) {
        double lhs = c.alpha * green_unnormalized(n, s, rho);
        double rhs = gs(rho);
        if (!(std::abs(lhs / rhs - 1.0) < guard))
            throw CalibrationError(
                "green/green_spectral ratio not constant in rho (defect " +
                std::to_string(lhs / rhs - 1.0) + " at rho = " + std::to_string(rho) +
                "): formula bug");
    }
    return c;
}

GreenEvaluator::GreenEvaluator(const ProblemParams& params)
    : params_(params), consts_(calibrate_normalization(params)) {}

FlaggedValue GreenEvaluator::eval_flagged(double rho) const {
    if (rho <= 0.0) throw DomainError("green needs rho > 0");
    if (rho > underflow_threshold()) return {0.0, true};
    return {consts_.alpha * green_unnormalized(params_.n, params_.s, rho), false};
}

double GreenEvaluator::operator()(double rho) const { return eval_flagged(rho).value; }

SingularKernelEvaluator::SingularKernelEvaluator(const ProblemParams& params)
    : params_(params) {
    const int n = params.n;
    const double s = params.s;
    consts_.dn = 1.0 / (std::pow(2.0, 3 - n) * M_PI * sphere_area(n - 1));
    consts_.c1 = 1.0 / (std::pow(2.0, n - 2 + 2.0 * s) * std::tgamma(0.5 * (n - 1)) *
                        std::tgamma(0.5 + s));
    double a_kernel = heat_base(n) * std::pow(n - 1.0, s + 0.5) / minus_gamma_minus_s(s);
    if (n % 2 == 0) a_kernel *= std::sqrt(M_PI);
    consts_.c_ns = a_kernel / consts_.c1;
    consts_.alpha = 0.0;  // Green-side scale; filled by calibrate_normalization
}

double SingularKernelEvaluator::operator()(double rho) const {
    if (rho <= 0.0) throw DomainError("singular kernel needs rho > 0");
    if (rho > 700.0 / (params_.n - 1.0)) return 0.0;
    return consts_.c_ns * consts_.c1 * kernel_unnormalized(params_.n, params_.s, rho);
}

double SingularKernelEvaluator::profile(double rho) const {
    if (rho <= 0.0) throw DomainError("singular kernel needs rho > 0");
    return consts_.c1 * kernel_unnormalized(params_.n, params_.s, rho);
}

namespace {

std::map<CacheKey, std::shared_ptr<const GreenEvaluator>>& green_cache() {
    static std::map<CacheKey, std::shared_ptr<const GreenEvaluator>> c;
    return c;
}

std::map<CacheKey, std::shared_ptr<const SingularKernelEvaluator>>& kernel_cache() {
    static std::map<CacheKey, std::shared_ptr<const SingularKernelEvaluator>> c;
    return c;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::shared_ptr<const GreenEvaluator> shared_green(const ProblemParams& params) {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto& cache = green_cache();
    CacheKey key{params.n, params.s};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<GreenEvaluator>(params)).first;
    return it->second;
}

std::shared_ptr<const SingularKernelEvaluator> shared_kernel(const ProblemParams& params) {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto& cache = kernel_cache();
    CacheKey key{params.n, params.s};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<SingularKernelEvaluator>(params)).first;
    return it->second;
}

double green(const ProblemParams& params, double rho) {
    return (*shared_green(params))(rho);
}

double singular_kernel(const ProblemParams& params, double rho) {
    return (*shared_kernel(params))(rho);
}

TabulatedKernel::TabulatedKernel(const std::function<double(double)>& f, double rho_lo,
                                 double rho_hi, int points, double tail_rate)
    : lo_(std::log(rho_lo)), hi_(std::log(rho_hi)), tail_rate_(tail_rate) {
    if (!(rho_lo > 0.0 && rho_hi > rho_lo) || points < 8)
        throw DomainError("bad tabulation window");
    dx_ = (hi_ - lo_) / (points - 1);
    logv_.resize(points);
    for (int i = 0; i < points; ++i) {
        double v = f(std::exp(lo_ + i * dx_));
        if (!(v > 0.0) || !std::isfinite(std::log(v)))
            throw AccuracyError("tabulated kernel needs positive finite values");
        logv_[i] = std::log(v);
    }
    slope_lo_ = (logv_[1] - logv_[0]) / dx_;
}

double TabulatedKernel::operator()(double rho) const {
    double x = std::log(rho);
    if (x <= lo_) return std::exp(logv_[0] + slope_lo_ * (x - lo_));
    if (x >= hi_) return std::exp(logv_.back() - tail_rate_ * (rho - std::exp(hi_)));
    double t = (x - lo_) / dx_;
    int i = std::clamp(static_cast<int>(t) - 1, 0, static_cast<int>(logv_.size()) - 4);
    double u = t - i;  // in [1, 2] within the 4-point stencil
    // uniform-grid cubic Lagrange
    double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return std::exp(w0 * logv_[i] + w1 * logv_[i + 1] + w2 * logv_[i + 2] +
                    w3 * logv_[i + 3]);
}

}  // namespace hyperfrac::kernels
