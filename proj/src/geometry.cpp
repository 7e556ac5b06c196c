#include "hyperfrac/geometry.hpp"

#include <cmath>
#include <string>

#include "hyperfrac/errors.hpp"

namespace hyperfrac::geometry {

namespace {

constexpr double kLorentzTol = 1e-12;

double spatial_norm_sq(const std::vector<double>& c) {
    double s = 0.0;
    for (size_t i = 1; i < c.size(); ++i) s += c[i] * c[i];
    return s;
}

}  // namespace

HPoint::HPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 3)
        throw InvalidPointError("HPoint needs at least 3 Minkowski coordinates (n >= 2)");
    double q = spatial_norm_sq(coords_);
    double form = coords_[0] * coords_[0] - q;
    if (std::abs(form - 1.0) > kLorentzTol * std::max(1.0, coords_[0] * coords_[0]) ||
        coords_[0] < 1.0 - kLorentzTol)
        throw InvalidPointError("Lorentz constraint violated: x0^2 - |x|^2 = " +
                                std::to_string(form));
    // Snap back onto the sheet so isometry chains cannot drift.
    coords_[0] = std::sqrt(1.0 + q);
}

HPoint HPoint::origin(int n) {
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    return HPoint(std::move(c));
}

BallPoint::BallPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw InvalidPointError("BallPoint needs n >= 2 coordinates");
    double r = 0.0;
    for (double x : coords_) r += x * x;
    if (r >= 1.0) throw InvalidPointError("ball point has norm >= 1");
}

double BallPoint::norm() const {
    double r = 0.0;
    for (double x : coords_) r += x * x;
    return std::sqrt(r);
}

double lorentz_inner(const HPoint& a, const HPoint& b) {
    if (a.dim() != b.dim()) throw InvalidPointError("dimension mismatch");
    double s = -a[0] * b[0];
    for (int i = 1; i <= a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double dist(const HPoint& a, const HPoint& b) {
    if (a.dim() != b.dim()) throw InvalidPointError("dimension mismatch");
    // cosh(rho) - 1 = <a-b, a-b>_L / 2, which is exact for points on the sheet
    // and avoids the catastrophic cancellation of -<a,b> - 1 for nearby points.
    double space = 0.0;
    for (int i = 1; i <= a.dim(); ++i) {
        double d = a[i] - b[i];
        space += d * d;
    }
    double d0 = a[0] - b[0];
    double u = 0.5 * (space - d0 * d0);
    if (u < 0.0) u = 0.0;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

HPoint ball_to_hyperboloid(const BallPoint& b) {
    double r2 = 0.0;
    for (int i = 0; i < b.dim(); ++i) r2 += b[i] * b[i];
    double denom = 1.0 - r2;
    std::vector<double> c(b.dim() + 1);
    c[0] = (1.0 + r2) / denom;
    for (int i = 0; i < b.dim(); ++i) c[i + 1] = 2.0 * b[i] / denom;
    return HPoint(std::move(c));
}

BallPoint hyperboloid_to_ball(const HPoint& p) {
    std::vector<double> c(p.dim());
    for (int i = 0; i < p.dim(); ++i) c[i] = p[i + 1] / (1.0 + p[0]);
    return BallPoint(std::move(c));
}

double dist_ball(const BallPoint& a, const BallPoint& b) {
    double diff = 0.0, ra = 0.0, rb = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        diff += d * d;
        ra += a[i] * a[i];
        rb += b[i] * b[i];
    }
    double u = 2.0 * diff / ((1.0 - ra) * (1.0 - rb));
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

HPoint boost(double t, const HPoint& p, const Foliation& f) {
    int d = f.direction_index;
    if (d < 1 || d > p.dim()) throw InvalidPointError("foliation direction out of range");
    std::vector<double> c = p.coords();
    double ch = std::cosh(t), sh = std::sinh(t);
    double x0 = c[0], xd = c[d];
    c[0] = ch * x0 + sh * xd;
    c[d] = sh * x0 + ch * xd;
    return HPoint(std::move(c));
}

HPoint reflect(double lambda, const HPoint& p, const Foliation& f) {
    HPoint q = boost(-lambda, p, f);
    std::vector<double> c = q.coords();
    c[f.direction_index] = -c[f.direction_index];
    return boost(lambda, HPoint(std::move(c)), f);
}

bool in_half_space(double lambda, const HPoint& p, const Foliation& f) {
    HPoint q = boost(-lambda, p, f);
    return q[f.direction_index] < 0.0;
}

double cosh_dist_radial(double r, double rp, double theta) {
    if (r < 0.0 || rp < 0.0) throw DomainError("radii must be nonnegative");
    // cosh|r - rp| + sinh r sinh rp (1 - cos theta): exact at theta = 0 and
    // monotone in theta without cancellation.
    double v = std::cosh(r - rp) + std::sinh(r) * std::sinh(rp) * (1.0 - std::cos(theta));
    return v < 1.0 ? 1.0 : v;
}

double radial_pair_distance(double r, double rp, double theta) {
    if (r < 0.0 || rp < 0.0) throw DomainError("radii must be nonnegative");
    double sh = std::sin(0.5 * theta);
    double u = 2.0 * std::pow(std::sinh(0.5 * (r - rp)), 2) +
               2.0 * std::sinh(r) * std::sinh(rp) * sh * sh;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

}  // namespace hyperfrac::geometry
