#include "specbound/liebthirring.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace specbound {

namespace {

constexpr int kMaxLevels = 128;
constexpr double kPi = 3.14159265358979323846;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double default_slack(double rhs) { return 1e-6 * std::max(1.0, std::abs(rhs)); }

// An empty spectrum is a legitimate outcome for weak wells: sums over levels
// are then zero rather than an error.
Spectrum try_spectrum(const ShootingProblem& pb, int max_levels, double tol) {
    try {
        return solve_spectrum(pb, max_levels, tol);
    } catch (const NoBoundState&) {
        Spectrum s;
        s.grid = pb.grid;
        s.count_requested = max_levels;
        s.count_found = 0;
        return s;
    }
}

// mu_1 = -inf spec(H0), capped at the essential-spectrum edge: a background
// with no bound state contributes mu_1 = 0 and the shifted sums reduce to
// plain Riesz means.
double ground_level_or_zero(const ShootingProblem& pb, double tol) {
    try {
        return -ground_state(pb, tol).first;
    } catch (const NoBoundState&) {
        return 0.0;
    }
}

bool below_with_tolerance(double lambda, double mu) {
    return lambda < mu - 1e-9 * std::max(1.0, mu);
}

void finalize(InequalityReport& rep) {
    rep.margin = rep.rhs - rep.lhs;
    rep.slack = default_slack(rep.rhs);
    rep.holds = rep.margin >= -rep.slack;
}

}  // namespace

double semiclassical_constant(double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("semiclassical_constant: gamma must be positive");
    return std::tgamma(gamma + 1.0) / (std::sqrt(4.0 * kPi) * std::tgamma(gamma + 1.5));
}

double normalization_constant(double gamma, double delta) {
    if (delta < 0.0) throw DomainError("normalization_constant: delta must be >= 0");
    if (!(gamma > delta)) throw DomainError("normalization_constant: gamma must exceed delta");
    return 1.0 / std::beta(gamma - delta, delta + 1.0);
}

double theorem1_constant(double gamma) {
    if (gamma < 1.5 - 1e-12) throw DomainError("theorem1_constant: gamma must be >= 3/2");
    if (gamma <= 1.5 + 1e-12) return semiclassical_constant(gamma);
    return 3.0 * normalization_constant(2.0 * gamma, 3.0) /
           (32.0 * normalization_constant(gamma + 0.5, 2.0));
}

double shifted_sum(const Spectrum& spectrum_v, double mu_ref, double gamma) {
    if (!(mu_ref >= 0.0))
        throw PreconditionViolated("shifted_sum: mu_ref must be nonnegative");
    if (gamma < 1.5 - 1e-12) throw std::invalid_argument("shifted_sum: gamma must be >= 3/2");
    const double s_ref = std::sqrt(mu_ref);
    double sum = 0.0;
    for (double e : spectrum_v.eigenvalues) {
        const double d = std::sqrt(-e) - s_ref;
        if (d > 0.0) sum += std::pow(d, 2.0 * gamma);
    }
    return sum;
}

LadderDifferences ladder_difference_sum(const Spectrum& spectrum_v, const Spectrum& spectrum_0,
                                        int K) {
    if (K < 0 || K > std::min(spectrum_v.count_found, spectrum_0.count_found))
        throw PreconditionViolated(
            "ladder_difference_sum: K exceeds the computed level counts");
    LadderDifferences out;
    for (int k = 1; k <= K; ++k) {
        const double lambda = -spectrum_v.eigenvalues[size_t(k - 1)];
        const double mu = -spectrum_0.eigenvalues[size_t(k - 1)];
        if (below_with_tolerance(lambda, mu)) out.ordering_violation = true;
        const double d = std::sqrt(lambda) - std::sqrt(mu);
        const double cubic = d * d * d;
        const double combined = cubic + 1.5 * std::sqrt(mu) * d * d;
        out.per_level_cubic.emplace_back(k, cubic);
        out.per_level_combined.emplace_back(k, combined);
        out.cubic += cubic;
        out.combined += combined;
    }
    return out;
}

double riesz_identity_defect(double exponent, double delta, double lambda) {
    if (delta < 0.0) throw DomainError("riesz_identity_defect: delta must be >= 0");
    if (exponent - delta < 0.25)
        throw DomainError(
            "riesz_identity_defect: exponent must exceed delta by at least 1/4 for a "
            "quadrature-stable integrand");
    if (lambda >= 0.0) return 0.0;
    const double depth = -lambda;
    // kappa = |lambda| t^m turns the kappa^(exponent-delta-1) endpoint into a
    // t-power of degree >= 3, smooth for composite Simpson.
    constexpr double m = 16.0;
    constexpr int n = 80001;
    const double a = m * (exponent - delta) - 1.0;
    Grid tg(0.0, 1.0, n);
    std::vector<double> vals(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double t = tg.point(i);
        const double tm = std::min(std::pow(t, m), 1.0);
        vals[size_t(i)] = (t > 0.0 ? std::pow(t, a) : 0.0) * std::pow(1.0 - tm, delta);
    }
    const double integral = m * integrate(GridFunction(tg, std::move(vals)));
    const double lhs = std::pow(depth, exponent);
    const double rhs = normalization_constant(exponent, delta) * lhs * integral;
    return std::abs(lhs - rhs);
}

double aizenman_lieb_lift_check(double gamma, const std::vector<double>& sample_levels) {
    double worst = 0.0;
    for (double l : sample_levels)
        worst = std::max(worst, riesz_identity_defect(2.0 * gamma, 3.0, l));
    return worst;
}

InequalityReport verify(const InequalityName& name, const PotentialSpec& v0,
                        const PotentialSpec& v, const BoundaryCondition& bc, const Grid& grid,
                        double tol) {
    validate_boundary(v0.domain, bc);
    if (v0.domain != v.domain)
        throw PreconditionViolated("verify: V0 and V must share a domain");

    InequalityReport rep;
    rep.name = name;
    rep.grid = grid;
    rep.tolerance = tol;
    const bool whole = v0.domain == SpatialDomain::WholeLine;

    if (const auto* p = std::get_if<ClassicalLT>(&name)) {
        if (!whole) throw PreconditionViolated("ClassicalLT: whole-line potentials only");
        if (!v0.is_zero()) throw PreconditionViolated("ClassicalLT: requires V0 = 0");
        if (p->gamma < 1.5 - 1e-12)
            throw PreconditionViolated("ClassicalLT: gamma >= 3/2 required");
        Spectrum s = try_spectrum(make_problem(v, bc, grid), kMaxLevels, tol);
        for (int k = 1; k <= s.count_found; ++k) {
            const double c = std::pow(-s.eigenvalues[size_t(k - 1)], p->gamma);
            rep.per_level.emplace_back(k, c);
            rep.lhs += c;
        }
        rep.levels_used = s.count_found;
        rep.rhs =
            semiclassical_constant(p->gamma) * positive_part_moment(v, p->gamma + 0.5, grid);
    } else if (std::holds_alternative<Schmincke>(name)) {
        if (!whole) throw PreconditionViolated("Schmincke: whole-line potentials only");
        ShootingProblem pb = make_problem(v0, v, bc, grid);
        rep.lhs = 0.25 * integrate(GridFunction(grid, pb.well));
        Spectrum s = try_spectrum(pb, kMaxLevels, tol);
        for (int k = 1; k <= s.count_found; ++k) {
            const double c = std::sqrt(-s.eigenvalues[size_t(k - 1)]);
            rep.per_level.emplace_back(k, c);
            rep.rhs += c;
        }
        rep.per_level_side = PerLevelSide::Rhs;
        rep.orientation = BoundOrientation::LowerBound;
        rep.levels_used = s.count_found;
    } else if (const auto* p = std::get_if<Theorem1>(&name)) {
        if (!whole) throw PreconditionViolated("Theorem1: whole-line potentials only");
        if (p->gamma < 1.5 - 1e-12)
            throw PreconditionViolated("Theorem1: gamma >= 3/2 required");
        const double mu1 = ground_level_or_zero(make_problem(v0, bc, grid), tol);
        Spectrum s = try_spectrum(make_problem(v0, v, bc, grid), kMaxLevels, tol);
        const double s_ref = std::sqrt(mu1);
        for (int k = 1; k <= s.count_found; ++k) {
            const double d = std::sqrt(-s.eigenvalues[size_t(k - 1)]) - s_ref;
            const double c = d > 0.0 ? std::pow(d, 2.0 * p->gamma) : 0.0;
            rep.per_level.emplace_back(k, c);
            rep.lhs += c;
        }
        rep.levels_used = s.count_found;
        rep.rhs = theorem1_constant(p->gamma) * positive_part_moment(v, p->gamma + 0.5, grid);
    } else if (const auto* p = std::get_if<Theorem2>(&name)) {
        const auto sigma = robin_sigma(bc);
        if (whole || !sigma)
            throw PreconditionViolated("Theorem2: half line with a Robin boundary required");
        if (p->gamma < 1.5 - 1e-12)
            throw PreconditionViolated("Theorem2: gamma >= 3/2 required");
        rep.sigma = *sigma;
        const double mu1 = ground_level_or_zero(make_problem(v0, bc, grid), tol);
        Spectrum s = try_spectrum(make_problem(v0, v, bc, grid), kMaxLevels, tol);
        const double s_ref = std::sqrt(mu1);
        for (int k = 1; k <= s.count_found; ++k) {
            const double d = std::sqrt(-s.eigenvalues[size_t(k - 1)]) - s_ref;
            const double c = d > 0.0 ? std::pow(d, 2.0 * p->gamma) : 0.0;
            rep.per_level.emplace_back(k, c);
            rep.lhs += c;
        }
        rep.levels_used = s.count_found;
        rep.rhs =
            2.0 * theorem1_constant(p->gamma) * positive_part_moment(v, p->gamma + 0.5, grid);
    } else if (const auto* p = std::get_if<Theorem3>(&name)) {
        if (whole || !is_dirichlet(bc) || !std::holds_alternative<Coulomb>(v0.family))
            throw PreconditionViolated(
                "Theorem3: Coulomb background on the half line with Dirichlet boundary "
                "required");
        if (p->k_max < 1) throw PreconditionViolated("Theorem3: k_max must be >= 1");
        Spectrum s0 = try_spectrum(make_problem(v0, bc, grid), p->k_max, tol);
        Spectrum sv = try_spectrum(make_problem(v0, v, bc, grid), p->k_max, tol);
        const int K = std::min({s0.count_found, sv.count_found, p->k_max});
        LadderDifferences d = ladder_difference_sum(sv, s0, K);
        rep.per_level = d.per_level_cubic;
        rep.lhs = d.cubic;
        rep.ordering_violation = d.ordering_violation;
        rep.levels_used = K;
        rep.rhs = (3.0 / 8.0) * positive_part_moment(v, 2.0, grid);
    } else if (std::holds_alternative<Theorem4>(name)) {
        if (!whole || !std::holds_alternative<PoschlTeller>(v0.family))
            throw PreconditionViolated(
                "Theorem4: sech^2 background on the whole line required");
        const double nu = std::get<PoschlTeller>(v0.family).nu;
        const int level_cap = int(std::ceil(nu - 1e-12));
        Spectrum s0 = try_spectrum(make_problem(v0, bc, grid), level_cap, tol);
        Spectrum sv = try_spectrum(make_problem(v0, v, bc, grid), kMaxLevels, tol);
        const int paired = std::min({level_cap, s0.count_found, sv.count_found});
        // Levels past the background's bottom rung are shifted by that rung;
        // since the rung is nonnegative this only tightens the left side.
        const double tail_ref =
            paired > 0 ? std::sqrt(-s0.eigenvalues[size_t(paired - 1)]) : 0.0;
        for (int k = 1; k <= sv.count_found; ++k) {
            const double lambda = -sv.eigenvalues[size_t(k - 1)];
            double c;
            if (k <= paired) {
                const double mu = -s0.eigenvalues[size_t(k - 1)];
                if (below_with_tolerance(lambda, mu)) rep.ordering_violation = true;
                const double d = std::sqrt(lambda) - std::sqrt(mu);
                c = d * d * d;
            } else {
                const double d = std::max(std::sqrt(lambda) - tail_ref, 0.0);
                c = d * d * d;
            }
            rep.per_level.emplace_back(k, c);
            rep.lhs += c;
        }
        rep.levels_used = sv.count_found;
        rep.rhs = (3.0 / 16.0) * positive_part_moment(v, 2.0, grid);
    } else if (const auto* p = std::get_if<Proposition1>(&name)) {
        if (!whole) throw PreconditionViolated("Proposition1: whole-line potentials only");
        if (p->K < 1) throw PreconditionViolated("Proposition1: K must be >= 1");
        Ladder lad = build_ladder(v0, v, bc, grid, p->K);
        if (lad.K < p->K)
            throw PreconditionViolated("Proposition1: ladder stopped early: " +
                                       lad.breakdown_reason);
        double raw_error_sum = 0.0;
        for (int k = 1; k <= p->K; ++k) {
            const LadderStep& st = lad.steps[size_t(k - 1)];
            if (below_with_tolerance(st.lambda_k, st.mu_k)) rep.ordering_violation = true;
            const double d = std::sqrt(st.lambda_k) - std::sqrt(st.mu_k);
            const double c = d * d * d + 1.5 * std::sqrt(st.mu_k) * d * d;
            rep.per_level.emplace_back(k, c);
            rep.lhs += c;
            raw_error_sum += lad.error_terms[size_t(k - 1)];
        }
        const double error_term = 0.75 * raw_error_sum;
        GridFunction vsq = sample_on_grid(v, grid);
        for (double& y : vsq.values) y *= y;
        rep.rhs = (3.0 / 16.0) * integrate(vsq) + error_term;
        rep.error_term = error_term;
        rep.levels_used = p->K;
    } else if (const auto* p = std::get_if<AizenmanLieb>(&name)) {
        if (2.0 * p->gamma - p->delta < 0.25)
            throw PreconditionViolated(
                "AizenmanLieb: 2*gamma must exceed delta by at least 1/4");
        Spectrum s = try_spectrum(make_problem(v0, v, bc, grid), kMaxLevels, tol);
        for (int k = 1; k <= s.count_found; ++k) {
            const double defect =
                riesz_identity_defect(2.0 * p->gamma, p->delta, s.eigenvalues[size_t(k - 1)]);
            rep.per_level.emplace_back(k, defect);
            rep.lhs = std::max(rep.lhs, defect);
        }
        rep.per_level_side = PerLevelSide::LhsMax;
        rep.levels_used = s.count_found;
        rep.rhs = 1e-8;  // the identity's accepted quadrature tolerance
        rep.margin = rep.rhs - rep.lhs;
        rep.slack = 0.0;
        rep.holds = rep.margin >= 0.0;
        return rep;
    }

    finalize(rep);
    return rep;
}

std::string report_name(const InequalityName& name) {
    return std::visit(
        overloaded{[](const ClassicalLT&) { return std::string("ClassicalLT"); },
                   [](const Schmincke&) { return std::string("Schmincke"); },
                   [](const Theorem1&) { return std::string("Theorem1"); },
                   [](const Theorem2&) { return std::string("Theorem2"); },
                   [](const Theorem3&) { return std::string("Theorem3"); },
                   [](const Theorem4&) { return std::string("Theorem4"); },
                   [](const Proposition1&) { return std::string("Proposition1"); },
                   [](const AizenmanLieb&) { return std::string("AizenmanLieb"); }},
        name);
}

std::string to_json(const InequalityReport& rep) {
    using nlohmann::json;
    json params = std::visit(
        overloaded{[](const ClassicalLT& c) { return json{{"gamma", c.gamma}}; },
                   [](const Schmincke&) { return json::object(); },
                   [](const Theorem1& t) { return json{{"gamma", t.gamma}}; },
                   [](const Theorem2& t) { return json{{"gamma", t.gamma}}; },
                   [](const Theorem3& t) { return json{{"k_max", t.k_max}}; },
                   [](const Theorem4&) { return json::object(); },
                   [](const Proposition1& t) { return json{{"K", t.K}}; },
                   [](const AizenmanLieb& a) {
                       return json{{"gamma", a.gamma}, {"delta", a.delta}};
                   }},
        rep.name);
    if (rep.sigma) params["sigma"] = *rep.sigma;

    json per_level = json::array();
    for (const auto& [k, c] : rep.per_level) per_level.push_back(json::array({k, c}));

    json j{
        {"name", report_name(rep.name)},
        {"params", params},
        {"lhs", rep.lhs},
        {"rhs", rep.rhs},
        {"margin", rep.margin},
        {"holds", rep.holds},
        {"slack", rep.slack},
        {"orientation",
         rep.orientation == BoundOrientation::UpperBound ? "upper_bound" : "lower_bound"},
        {"per_level", per_level},
        {"per_level_side", rep.per_level_side == PerLevelSide::Lhs
                               ? "lhs"
                               : (rep.per_level_side == PerLevelSide::Rhs ? "rhs" : "lhs_max")},
        {"error_term", rep.error_term ? json(*rep.error_term) : json(nullptr)},
        {"ordering_violation", rep.ordering_violation},
        {"grid",
         {{"x_min", rep.grid.x_min}, {"x_max", rep.grid.x_max}, {"n_points", rep.grid.n_points}}},
        {"tolerance", rep.tolerance},
        {"levels_used", rep.levels_used},
    };
    return j.dump(2);
}

}  // namespace specbound
