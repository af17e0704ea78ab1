#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specbound/numerics.hpp"

// Potential families for operators of the form  H = -d^2/dx^2 - V  (so an
// attractive well has V > 0).  Half-line families live on r > 0 with a
// boundary condition at the origin; whole-line families decay at +/-inf.
namespace specbound {

struct UnsupportedFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class SpatialDomain { WholeLine, HalfLine };

struct Dirichlet {};
struct Robin {
    double sigma = 0.0;  // u'(0) = sigma * u(0)
};
struct DecayAtInfinity {};
using BoundaryCondition = std::variant<DecayAtInfinity, Dirichlet, Robin>;

// nu(nu+1) sech^2(x), nu > 0
struct PoschlTeller {
    double nu;
};
// kappa/r - nu(nu+1)/r^2 on the half line, kappa > 0, nu >= -1/2
struct Coulomb {
    double nu;
    double kappa;
};
// depth on [-half_width, half_width], 0 outside
struct SquareWell {
    double depth;
    double half_width;
};
// depth * exp(-(x/width)^2)
struct Gaussian {
    double depth;
    double width;
};
// nu(nu+1)[sech^2(x - a) + sech^2(x + a)], a = separation
struct DoubleWell {
    double nu;
    double separation;
};
// Values pinned to one specific grid; no resampling.
struct Tabulated {
    GridFunction table;
};

using PotentialFamily =
    std::variant<PoschlTeller, Coulomb, SquareWell, Gaussian, DoubleWell, Tabulated>;

struct PotentialSpec {
    SpatialDomain domain = SpatialDomain::WholeLine;
    PotentialFamily family{PoschlTeller{1.0}};

    PotentialSpec() = default;
    PotentialSpec(SpatialDomain d, PotentialFamily f);  // validates parameters

    static PotentialSpec zero(SpatialDomain d);  // the free operator
    bool is_zero() const;
};

// Throws DomainError for x outside the domain (x <= 0 on the half line); a
// Tabulated spec only answers at its own grid nodes.
double evaluate(const PotentialSpec& p, double x);

GridFunction sample_on_grid(const PotentialSpec& p, const Grid& grid);

// E_k for the families with known spectra (PoschlTeller: -(nu-k+1)^2 for
// k = 1..ceil(nu); Coulomb: -kappa^2/(4(nu+k)^2)).  Throws UnsupportedFamily
// otherwise.
std::vector<double> closed_form_levels(const PotentialSpec& p, int k_max);

// integral of max(V,0)^exponent over the grid
double positive_part_moment(const PotentialSpec& p, double exponent, const Grid& grid);

// Leading behaviour V ~ -q(q-1)/r^2 + kappa/r near r = 0, expressed through
// the exponent q of the recessive solution u ~ r^q.  Used for shooting starts
// and for pole-aware log-derivatives on the half line.
struct OriginStructure {
    double exponent = 1.0;
    double kappa = 0.0;
};
OriginStructure origin_structure(const PotentialSpec& p);

// Two-column whitespace-separated table (x, V).  The loader enforces strictly
// increasing, uniformly spaced x.
void save_tabulated(const std::string& path, const GridFunction& f);
GridFunction load_tabulated(const std::string& path);

void validate_boundary(SpatialDomain domain, const BoundaryCondition& bc);
bool is_dirichlet(const BoundaryCondition& bc);
std::optional<double> robin_sigma(const BoundaryCondition& bc);

}  // namespace specbound
