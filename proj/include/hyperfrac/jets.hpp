#pragma once

#include <array>
#include <functional>

namespace hyperfrac::jets {

// Highest derivative order carried by a Jet (covers odd n <= 25).
inline constexpr int kMaxOrder = 14;

// Derivatives 0..order of a scalar function at base_point (plain derivatives,
// not Taylor-scaled). Fixed-capacity value type.
class Jet {
  public:
    Jet() = default;
    Jet(double base_point, int order);

    double base_point() const { return base_; }
    int order() const { return order_; }
    double operator[](int k) const { return d_[k]; }
    double& operator[](int k) { return d_[k]; }

    // Jet of the derivative; order drops by one.
    Jet derivative() const;

    // Leibniz product; result order = min of the operand orders.
    Jet operator*(const Jet& other) const;

    Jet operator*(double c) const;
    Jet operator+(const Jet& other) const;

    // Reciprocal jet of a nonvanishing jet.
    Jet reciprocal() const;

  private:
    double base_ = 0.0;
    int order_ = 0;
    std::array<double, kMaxOrder + 1> d_{};
};

// Elementary jets at rho.
Jet sinh_jet(double rho, int order);
Jet cosh_jet(double rho, int order);
Jet csch_jet(double rho, int order);                    // 1 / sinh
Jet cos_jet(double omega, double rho, int order);       // cos(omega * rho)
Jet power_jet(double alpha, double rho, int order);     // rho^alpha
Jet gaussian_jet(double inv4t, double rho, int order);  // exp(-inv4t * rho^2)

// Supplies derivative jets of a scalar function: jet(rho, m) must return the
// derivatives 0..m at rho.
using JetProducer = std::function<Jet(double rho, int order)>;

// (sign * d/drho / sinh rho)^m applied to the function described by `source`,
// evaluated at rho. sign must be +1 or -1; m = 0 returns the plain value.
double iterated_operator(const JetProducer& source, int m, double rho, int sign);

// Same composition but keeping `extra` derivative orders of the result.
Jet iterated_operator_jet(const JetProducer& source, int m, double rho, int sign, int extra);

}  // namespace hyperfrac::jets
