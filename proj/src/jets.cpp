#include "hyperfrac/jets.hpp"

#include <cmath>
#include <string>

#include "hyperfrac/errors.hpp"

namespace hyperfrac::jets {

namespace {

void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
        throw UnsupportedOrderError("jet order " + std::to_string(order) +
                                    " outside [0, " + std::to_string(kMaxOrder) + "]");
}

// Binomial coefficients up to kMaxOrder.
double binom(int n, int k) {
    static const auto table = [] {
        std::array<std::array<double, kMaxOrder + 1>, kMaxOrder + 1> c{};
        for (int i = 0; i <= kMaxOrder; ++i) {
            c[i][0] = 1.0;
            for (int j = 1; j <= i; ++j)
                c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0.0);
        }
        return c;
    }();
    return table[n][k];
}

}  // namespace

Jet::Jet(double base_point, int order) : base_(base_point), order_(order) {
    check_order(order);
}

Jet Jet::derivative() const {
    if (order_ == 0) throw UnsupportedOrderError("cannot differentiate an order-0 jet");
    Jet r(base_, order_ - 1);
    for (int k = 0; k < order_; ++k) r[k] = d_[k + 1];
    return r;
}

Jet Jet::operator*(const Jet& other) const {
    int ord = std::min(order_, other.order_);
    Jet r(base_, ord);
    for (int k = 0; k <= ord; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += binom(k, j) * d_[j] * other.d_[k - j];
        r[k] = s;
    }
    return r;
}

Jet Jet::operator*(double c) const {
    Jet r = *this;
    for (int k = 0; k <= order_; ++k) r[k] *= c;
    return r;
}

Jet Jet::operator+(const Jet& other) const {
    int ord = std::min(order_, other.order_);
    Jet r(base_, ord);
    for (int k = 0; k <= ord; ++k) r[k] = d_[k] + other.d_[k];
    return r;
}

Jet Jet::reciprocal() const {
    if (d_[0] == 0.0) throw DomainError("reciprocal of a jet with zero value");
    Jet r(base_, order_);
    r[0] = 1.0 / d_[0];
    for (int k = 1; k <= order_; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += binom(k, j) * d_[j] * r[k - j];
        r[k] = -s / d_[0];
    }
    return r;
}

Jet sinh_jet(double rho, int order) {
    Jet r(rho, order);
    double sh = std::sinh(rho), ch = std::cosh(rho);
    for (int k = 0; k <= order; ++k) r[k] = (k % 2 == 0) ? sh : ch;
    return r;
}

Jet cosh_jet(double rho, int order) {
    Jet r(rho, order);
    double sh = std::sinh(rho), ch = std::cosh(rho);
    for (int k = 0; k <= order; ++k) r[k] = (k % 2 == 0) ? ch : sh;
    return r;
}

Jet csch_jet(double rho, int order) {
    if (rho <= 0.0) throw DomainError("csch jet needs rho > 0");
    return sinh_jet(rho, order).reciprocal();
}

Jet cos_jet(double omega, double rho, int order) {
    Jet r(rho, order);
    double c = std::cos(omega * rho), s = std::sin(omega * rho);
    double pw = 1.0;
    for (int k = 0; k <= order; ++k) {
        switch (k % 4) {
            case 0: r[k] = pw * c; break;
            case 1: r[k] = -pw * s; break;
            case 2: r[k] = -pw * c; break;
            default: r[k] = pw * s; break;
        }
        pw *= omega;
    }
    return r;
}

Jet power_jet(double alpha, double rho, int order) {
    if (rho <= 0.0) throw DomainError("power jet needs rho > 0");
    Jet r(rho, order);
    double coeff = 1.0;
    for (int k = 0; k <= order; ++k) {
        r[k] = coeff * std::pow(rho, alpha - k);
        coeff *= (alpha - k);
    }
    return r;
}

Jet gaussian_jet(double inv4t, double rho, int order) {
    Jet r(rho, order);
    r[0] = std::exp(-inv4t * rho * rho);
    if (order >= 1) r[1] = -2.0 * inv4t * rho * r[0];
    // g' = -2 a rho g  =>  g^(k+1) = -2a (rho g^(k) + k g^(k-1))
    for (int k = 1; k < order; ++k)
        r[k + 1] = -2.0 * inv4t * (rho * r[k] + k * r[k - 1]);
    return r;
}

double iterated_operator(const JetProducer& source, int m, double rho, int sign) {
    return iterated_operator_jet(source, m, rho, sign, 0)[0];
}

Jet iterated_operator_jet(const JetProducer& source, int m, double rho, int sign,
                          int extra) {
    if (m < 0) throw UnsupportedOrderError("operator power must be nonnegative");
    if (sign != 1 && sign != -1) throw DomainError("operator sign must be +1 or -1");
    if (m + extra > kMaxOrder)
        throw UnsupportedOrderError("operator power " + std::to_string(m) +
                                    " + extra orders exceeds jet support");
    if (rho <= 0.0) throw DomainError("iterated operator needs rho > 0");
    Jet cur = source(rho, m + extra);
    if (m == 0) return cur;
    Jet csch = csch_jet(rho, m + extra - 1);
    double s = static_cast<double>(sign);
    for (int step = 0; step < m; ++step) {
        cur = (cur.derivative() * csch) * s;
        // csch jet order shrinks alongside the working jet
    }
    return cur;
}

}  // namespace hyperfrac::jets
