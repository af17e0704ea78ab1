#pragma once

#include <utility>
#include <vector>

#include "specbound/numerics.hpp"
#include "specbound/potentials.hpp"

// Negative spectrum of H = -d^2/dx^2 - W by Numerov shooting: integrate from
// both ends with energy-dependent decaying starts, bracket levels by the node
// count of the left sweep, then bisect the matching mismatch at an interior
// join.  Truncation uses decaying initial data (never hard zeros), so levels
// are accurate as long as the well is negligible at the grid ends.
namespace specbound {

struct NoBoundState : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Spectrum {
    Grid grid;
    std::vector<double> eigenvalues;            // increasing, all < 0
    std::vector<GridFunction> eigenfunctions;   // L2-normalized on the grid
    int count_requested = 0;
    int count_found = 0;
};

// A fully sampled problem.  `well` holds W on the grid; the structural hints
// cover the half-line origin (u ~ r^q with an optional 1/r correction) and a
// slowly decaying kappa/x tail, both of which matter for shooting starts.
struct ShootingProblem {
    Grid grid;
    std::vector<double> well;
    SpatialDomain domain = SpatialDomain::WholeLine;
    BoundaryCondition bc = DecayAtInfinity{};
    OriginStructure origin{1.0, 0.0};
    double tail_kappa = 0.0;
    double extra_depth = 0.0;  // widens the energy search floor (Robin binding)
};

ShootingProblem make_problem(const PotentialSpec& p, const BoundaryCondition& bc,
                             const Grid& grid);
// H = -d^2/dx^2 - V0 - V; hints come from V0, so V must be regular.
ShootingProblem make_problem(const PotentialSpec& v0, const PotentialSpec& v,
                             const BoundaryCondition& bc, const Grid& grid);

// tol is the energy resolution of the final bisection.  Throws NoBoundState
// if nothing is found, GridTooCoarse if a level cannot be certified by its
// node count.  count_found < max_levels means the spectrum was exhausted.
Spectrum solve_spectrum(const ShootingProblem& problem, int max_levels, double tol = 1e-12);
Spectrum solve_spectrum(const PotentialSpec& p, const BoundaryCondition& bc, const Grid& grid,
                        int max_levels, double tol = 1e-12);

// Lowest level with a strictly positive eigenfunction.
std::pair<double, GridFunction> ground_state(const ShootingProblem& problem, double tol = 1e-12);
std::pair<double, GridFunction> ground_state(const PotentialSpec& p, const BoundaryCondition& bc,
                                             const Grid& grid, double tol = 1e-12);

}  // namespace specbound
