#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specbound/commutation.hpp"
#include "specbound/eigensolver.hpp"
#include "specbound/numerics.hpp"
#include "specbound/potentials.hpp"

// Spectral inequalities for H_V = -d^2/dx^2 - V0 - V with lambda_k = -E_k(H_V)
// and mu_k = -E_k(H0).  All bounds are reported as lhs <= rhs with
// margin = rhs - lhs, so a nonnegative margin always means "holds",
// independently of whether the named result is an upper or a lower bound.
namespace specbound {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// sum lambda_k^gamma <= Lcl(gamma) * int V_+^{gamma+1/2}  (V0 = 0)
struct ClassicalLT {
    double gamma = 1.5;
};
// (1/4) int W <= sum sqrt(lambda_k), W the full well (lower bound)
struct Schmincke {};
// sum (sqrt(lambda_k) - sqrt(mu_1))_+^{2 gamma} <= L(gamma) int V_+^{gamma+1/2}, whole line
struct Theorem1 {
    double gamma = 1.5;
};
// the same on the half line with a Robin boundary and constant 2 L(gamma)
struct Theorem2 {
    double gamma = 1.5;
};
// sum_k (sqrt(lambda_k) - sqrt(mu_k))^3 <= (3/8) int V_+^2, Coulomb background,
// truncated at k_max computed levels
struct Theorem3 {
    int k_max = 5;
};
// paired cubic differences plus the unpaired tail sum lambda_k^{3/2}
// <= (3/16) int V_+^2, sech^2 background
struct Theorem4 {};
// ladder bound: sum_{k<=K} [d_k^3 + (3/2) sqrt(mu_k) d_k^2]
// <= (3/16) int V^2 + (3/4) sum_k int g_k' f_k^2
struct Proposition1 {
    int K = 1;
};
// quadrature defect of the Riesz-mean lifting identity at exponent 2*gamma
struct AizenmanLieb {
    double gamma = 3.0;
    double delta = 3.0;
};

using InequalityName = std::variant<ClassicalLT, Schmincke, Theorem1, Theorem2, Theorem3,
                                    Theorem4, Proposition1, AizenmanLieb>;

enum class BoundOrientation { UpperBound, LowerBound };
// Which side the per-level contributions add up to; LhsMax marks reports
// whose lhs is a maximum (not a sum) over levels.
enum class PerLevelSide { Lhs, Rhs, LhsMax };

struct InequalityReport {
    InequalityName name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool holds = false;
    double slack = 0.0;  // margin >= -slack still counts as holding
    BoundOrientation orientation = BoundOrientation::UpperBound;
    std::vector<std::pair<int, double>> per_level;
    PerLevelSide per_level_side = PerLevelSide::Lhs;
    std::optional<double> error_term;       // Proposition1 only
    std::optional<double> sigma;            // Theorem2 only (Robin parameter)
    bool ordering_violation = false;        // some lambda_k < mu_k beyond tolerance
    Grid grid;
    double tolerance = 1e-12;  // eigensolver energy tolerance
    int levels_used = 0;
};

// Gamma(g+1) / (sqrt(4 pi) Gamma(g+3/2)); equals 3/16 at g = 3/2.
double semiclassical_constant(double gamma);

// C_{g,d} = 1 / B(g-d, d+1), the constant that normalizes
// |l|^g = C_{g,d} int_0^inf k^{g-d-1} (l+k)_-^d dk.  DomainError when g <= d.
double normalization_constant(double gamma, double delta);

// Constant of the shifted bound: the semiclassical 3/16 at gamma = 3/2 and
// 3 C_{2g,3} / (32 C_{g+1/2,2}) above (the two agree in the limit g -> 3/2).
double theorem1_constant(double gamma);

// sum_k (sqrt(lambda_k) - sqrt(mu_ref))_+^{2 gamma}
double shifted_sum(const Spectrum& spectrum_v, double mu_ref, double gamma);

struct LadderDifferences {
    double combined = 0.0;  // sum of d_k^3 + (3/2) sqrt(mu_k) d_k^2
    double cubic = 0.0;     // sum of d_k^3
    std::vector<std::pair<int, double>> per_level_combined;
    std::vector<std::pair<int, double>> per_level_cubic;
    bool ordering_violation = false;
};
LadderDifferences ladder_difference_sum(const Spectrum& spectrum_v, const Spectrum& spectrum_0,
                                        int K);

InequalityReport verify(const InequalityName& name, const PotentialSpec& v0,
                        const PotentialSpec& v, const BoundaryCondition& bc, const Grid& grid,
                        double tol = 1e-12);

// |l|^exponent vs C_{exponent,delta} * int_0^{|l|} k^{exponent-delta-1} (l+k)_-^delta dk,
// by substituted Simpson quadrature; requires exponent - delta >= 1/4 for a
// regular integrand.  Returns the absolute defect (0 for l >= 0).
double riesz_identity_defect(double exponent, double delta, double lambda);

// max defect of the identity at exponent 2*gamma, delta = 3, over the sample
double aizenman_lieb_lift_check(double gamma, const std::vector<double>& sample_levels);

std::string report_name(const InequalityName& name);
std::string to_json(const InequalityReport& report);  // stable key set

}  // namespace specbound
