#pragma once

#include <functional>
#include <vector>

namespace hyperfrac {

enum class GridSpacing { Uniform, Log, Mixed };

// Strictly increasing radius grid. For Mixed spacing the nodes are geometric
// from inner_scale out to ~1 and uniform beyond, resolving both the kernel
// singularity and the exponential tail.
std::vector<double> make_grid(double rho_min, double rho_max, int nodes,
                              GridSpacing spacing);

// Samples of a radial profile on a grid starting at 0, with local cubic
// interpolation between nodes and zero beyond the last node.
class RadialFunction {
  public:
    RadialFunction(std::vector<double> grid, std::vector<double> values);

    static RadialFunction sample(const std::vector<double>& grid,
                                 const std::function<double(double)>& f);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    int size() const { return static_cast<int>(grid_.size()); }
    double rho_max() const { return grid_.back(); }

    double operator()(double rho) const;  // cubic; 0 beyond the grid
    double deriv1(double rho) const;
    double deriv2(double rho) const;

    double max_abs() const;

    // True when the sampled values never increase along the grid
    // (tolerance for roundoff: rises below tol * max_abs are ignored).
    bool nonincreasing(double tol = 1e-12) const;

    // Decay invariant required by the transforms: the tail value must sit
    // below `frac` of the maximum.
    bool has_decayed_tail(double frac = 1e-10) const;

  private:
    int cell_of(double rho) const;

    std::vector<double> grid_;
    std::vector<double> values_;
};

}  // namespace hyperfrac
