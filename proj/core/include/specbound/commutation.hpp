#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specbound/eigensolver.hpp"
#include "specbound/numerics.hpp"
#include "specbound/potentials.hpp"

// Factorization ladder for H0 = -d^2/dx^2 - V0 and H_V = H0 - V.  With the
// ground states u_k of H0^(k) and v_k of H_V^(k), the step quantities are
//   g_k = u_k'/u_k,   f_k = v_k'/v_k - g_k,
// and the lifted potentials V0^(k+1) = V0^(k) + 2 g_k', V^(k+1) = V^(k) + 2 f_k'.
// This is the convention in which the first-order factor annihilates the
// ground state; g solves g' = mu - V0 - g^2 and f solves
// f' = lambda - mu - V - f^2 - 2 g f, with g -> -+sqrt(mu) and
// f -> -+(sqrt(lambda) - sqrt(mu)) as x -> +-inf.
namespace specbound {

struct NonPositiveGroundState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using WindowBounds = std::pair<double, double>;  // [x_lo, x_hi]

struct LadderStep {
    int index = 0;
    double mu_k = 0.0;      // = -E_k(H0)
    double lambda_k = 0.0;  // = -E_k(H_V)
    GridFunction g_k;       // on the evaluation window
    GridFunction f_k;       // on the evaluation window
    GridFunction lifted_V0;  // V0^(k+1), full grid
    GridFunction lifted_V;   // V^(k+1), full grid
    double riccati_residual_g = 0.0;
    double riccati_residual_f = 0.0;
    double g_prime_max = 0.0;
    bool asymptotic_ok = false;
};

struct Ladder {
    std::vector<LadderStep> steps;
    int K = 0;                        // steps completed
    std::vector<double> error_terms;  // per-step integral of g_k' f_k^2
    bool completed = true;            // false: stopped early, see breakdown_reason
    std::string breakdown_reason;
};

// g = u'/u restricted to the window, computed by differencing log u (better
// conditioned than u'/u in the tails).  pole_order q subtracts a known q/r
// singular part before differencing and restores it afterwards, which keeps
// half-line log-derivatives accurate down to the first grid point.
GridFunction log_derivative(const GridFunction& u, const WindowBounds& window,
                            double pole_order = 0.0);

// sup over g's window of |g' - (mu - V0 - g^2)|.  V0 may live on the full
// grid; it is aligned to g's subgrid by node matching.
double riccati_residual_g(const GridFunction& g, const GridFunction& V0, double mu);

// f = psi'/psi - g on the window, which must coincide with g's subgrid.
// pole_order as in log_derivative (psi and the wave function behind g are
// assumed to share the same r^q origin behaviour, so poles cancel in f).
GridFunction perturbed_factorizer(const GridFunction& psi, const GridFunction& g,
                                  const WindowBounds& window, double pole_order = 0.0);

// sup over f's window of |f' - (lambda - mu - V - f^2 - 2 g f)|.
double riccati_residual_f(const GridFunction& f, const GridFunction& g, const GridFunction& V,
                          double lambda, double mu);

// (V0 + 2g', V + 2f'); g and f are extended as constants outside their
// window, so the lift is the identity out there.
std::pair<GridFunction, GridFunction> lift_once(const GridFunction& V0, const GridFunction& V,
                                                const GridFunction& g, const GridFunction& f);

struct LogConcavityReport {
    bool log_concave = false;
    double worst = 0.0;     // max of g'
    double location = 0.0;  // argmax of g'
};
LogConcavityReport check_log_concavity(const GridFunction& g, double tol);

// Quadratic extrapolation of a window function to x = 0 (half-line boundary
// data such as g1(0) = sigma, f1(0) = 0).
double extrapolate_to_origin(const GridFunction& f);

// Runs K factorization steps.  On breakdown (missing bound state or
// non-positive ground state) the partial ladder is returned with
// completed = false rather than throwing.
Ladder build_ladder(const PotentialSpec& v0, const PotentialSpec& v, const BoundaryCondition& bc,
                    const Grid& grid, int K);

}  // namespace specbound
