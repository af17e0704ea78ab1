#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

// Shared numerical kernels: uniform grids, quadrature, finite-difference
// derivatives and bracketed root finding.  Everything downstream assumes the
// uniform spacing enforced by Grid, so no non-uniform variants live here.
namespace specbound {

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform 1D grid: points are exactly x_min + i*spacing(), i = 0..n_points-1.
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 2;

    Grid() = default;
    Grid(double lo, double hi, int n);

    double spacing() const { return (x_max - x_min) / double(n_points - 1); }
    double point(int i) const { return x_min + double(i) * spacing(); }
    int size() const { return n_points; }

    bool operator==(const Grid&) const = default;

    // Desk-scale defaults: h = 1e-2 on [-20,20] and on (0,60].
    static Grid reference_whole_line() { return Grid(-20.0, 20.0, 4001); }
    static Grid reference_half_line() { return Grid(0.01, 60.0, 6000); }
};

// Real-valued samples on a Grid.  Values must be finite.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> v);
    static GridFunction sample(const Grid& g, const std::function<double(double)>& f);

    double operator[](int i) const { return values[size_t(i)]; }
    double& operator[](int i) { return values[size_t(i)]; }
    int size() const { return grid.n_points; }

    // Restriction to the index range [i_lo, i_hi] (inclusive); the result
    // carries its own subgrid.
    GridFunction restrict_to(int i_lo, int i_hi) const;
};

// Contiguous index window into a grid, used to stay clear of the endpoint
// regions where eigenfunction tails underflow.
struct Window {
    int i_lo = 0;
    int i_hi = 0;
    bool contains(int i) const { return i >= i_lo && i <= i_hi; }
    int size() const { return i_hi - i_lo + 1; }
};

// Composite Simpson; when the panel count is odd the final panel falls back
// to the trapezoid rule.
double integrate(const GridFunction& f);

// Fourth-order finite differences: five-point central stencils in the
// interior, matching one-sided stencils at the two points next to each edge.
// Falls back to second order when the grid is too short for five points.
GridFunction differentiate(const GridFunction& f);

// Bisection for a bracketed root: |result - root| <= tol.  The bracket may be
// given in either orientation.  Throws NoSignChange if f has the same strict
// sign at both ends.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-12);

double sup_norm(const GridFunction& f);
double max_abs_difference(const GridFunction& f, const std::function<double(double)>& g);

}  // namespace specbound
