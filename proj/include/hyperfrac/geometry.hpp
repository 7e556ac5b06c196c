#pragma once

#include <vector>

namespace hyperfrac::geometry {

// Point on the upper hyperboloid sheet x0^2 - x1^2 - ... - xn^2 = 1, x0 >= 1.
// Minkowski coordinates (x0, x1, ..., xn). Immutable value type.
class HPoint {
  public:
    // Validates the Lorentz constraint to 1e-12 and renormalizes x0.
    explicit HPoint(std::vector<double> coords);

    // Origin (1, 0, ..., 0) of H^n.
    static HPoint origin(int n);

    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    double operator[](int i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

  private:
    std::vector<double> coords_;
};

// Point of the Poincare ball model, |coords| < 1.
class BallPoint {
  public:
    explicit BallPoint(std::vector<double> coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }
    double norm() const;

  private:
    std::vector<double> coords_;
};

// Foliation of H^n by boosted copies of the hyperplane {x_d = 0}.
// direction_index is 1-based into the spatial coordinates.
struct Foliation {
    int direction_index = 1;
    double leaf_parameter = 0.0;
};

// Minkowski inner product <a,b> = -a0*b0 + a1*b1 + ... + an*bn.
double lorentz_inner(const HPoint& a, const HPoint& b);

// Geodesic distance via cosh(rho) = -<a,b>, evaluated with a cancellation-free
// branch for nearby points.
double dist(const HPoint& a, const HPoint& b);

// Hyperboloid coordinates are canonical here: boosts and reflections are
// linear in them. The ball model is an I/O convenience. No computations use
// the half-space model; for reference, (x0, x) maps to it through
//   y_i = x_i / (x0 + x_n)  (i < n),  y_n = 1 / (x0 + x_n).
HPoint ball_to_hyperboloid(const BallPoint& b);
BallPoint hyperboloid_to_ball(const HPoint& p);

double dist_ball(const BallPoint& a, const BallPoint& b);

// Hyperbolic rotation by t in the (x0, x_d) Lorentz plane.
HPoint boost(double t, const HPoint& p, const Foliation& f);

// Reflection across the leaf U_lambda: boost(lambda) o flip(x_d) o boost(-lambda).
HPoint reflect(double lambda, const HPoint& p, const Foliation& f);

// True when p lies on the side swept before the leaf U_lambda
// (boosted first spatial coordinate < 0).
bool in_half_space(double lambda, const HPoint& p, const Foliation& f);

// cosh of the distance between points at radii r, rp with angle theta between
// their directions: cosh r cosh rp - sinh r sinh rp cos theta.
double cosh_dist_radial(double r, double rp, double theta);

// The distance itself, evaluated without cancellation for nearby points.
double radial_pair_distance(double r, double rp, double theta);

}  // namespace hyperfrac::geometry
