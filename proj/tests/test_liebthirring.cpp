#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "specbound/liebthirring.hpp"

using namespace specbound;

namespace {

PotentialSpec sech2_well(double depth, const Grid& g) {
    return {SpatialDomain::WholeLine, Tabulated{GridFunction::sample(g, [depth](double x) {
                const double c = std::cosh(x);
                return depth / (c * c);
            })}};
}

Spectrum fake_spectrum(std::vector<double> levels) {
    Spectrum s;
    s.eigenvalues = std::move(levels);
    s.count_found = int(s.eigenvalues.size());
    s.count_requested = s.count_found;
    return s;
}

}  // namespace

TEST_CASE("semiclassical constant") {
    // Gamma(gamma+1) / (sqrt(4 pi) Gamma(gamma+3/2))
    CHECK(semiclassical_constant(1.5) == doctest::Approx(3.0 / 16.0).epsilon(1e-14));
    CHECK(semiclassical_constant(2.0) == doctest::Approx(8.0 / (15.0 * M_PI)).epsilon(1e-12));
    CHECK(semiclassical_constant(0.5) ==
          doctest::Approx(std::tgamma(1.5) / (std::sqrt(4.0 * M_PI) * std::tgamma(2.0)))
              .epsilon(1e-12));
}

TEST_CASE("shifted-sum bound constant") {
    CHECK(theorem1_constant(1.5) == semiclassical_constant(1.5));  // continuity at the base
    CHECK(theorem1_constant(2.0) == doctest::Approx(0.4).epsilon(1e-10));
    CHECK_THROWS_AS(theorem1_constant(1.4), DomainError);
    CHECK(theorem1_constant(1.7) > 0.0);
}

TEST_CASE("Riesz-mean normalization constant") {
    // 1 / B(gamma - delta, delta + 1)
    CHECK(normalization_constant(2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(normalization_constant(3.0, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(normalization_constant(1.5, 0.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(normalization_constant(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(normalization_constant(2.0, -0.5), DomainError);
}

TEST_CASE("Riesz lifting identity holds to quadrature accuracy") {
    for (double lam : {-0.5, -1.0, -2.5}) {
        CHECK(riesz_identity_defect(3.0, 2.0, lam) < 1e-8);
        CHECK(riesz_identity_defect(6.0, 3.0, lam) < 1e-8);
        CHECK(riesz_identity_defect(3.5, 3.0, lam) < 1e-8);
    }
    CHECK(riesz_identity_defect(3.0, 2.0, 0.5) == 0.0);  // nonnegative levels contribute zero
    CHECK_THROWS_AS(riesz_identity_defect(3.1, 3.0, -1.0), DomainError);  // integrand too singular
}

TEST_CASE("shifted sum arithmetic") {
    const Spectrum s = fake_spectrum({-4.0, -1.0});
    // shift sqrt(mu) = 1: (2-1)^3 + 0^3 = 1 at gamma = 3/2
    CHECK(shifted_sum(s, 1.0, 1.5) == doctest::Approx(1.0).epsilon(1e-14));
    // no shift: 8 + 1
    CHECK(shifted_sum(s, 0.0, 1.5) == doctest::Approx(9.0).epsilon(1e-14));
    // shift above the top level: empty sum
    CHECK(shifted_sum(s, 9.0, 1.5) == 0.0);
}

TEST_CASE("ladder difference sums") {
    const Spectrum sv = fake_spectrum({-4.0, -1.0});
    const Spectrum s0 = fake_spectrum({-1.0, -0.25});
    const LadderDifferences d = ladder_difference_sum(sv, s0, 1);
    // d_1 = 2 - 1 = 1: cubic 1, combined 1 + 1.5 * 1 * 1 = 2.5
    CHECK(d.cubic == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.combined == doctest::Approx(2.5).epsilon(1e-14));
    CHECK_FALSE(d.ordering_violation);

    const LadderDifferences d2 = ladder_difference_sum(sv, s0, 2);
    // adds d_2 = 1 - 0.5 = 0.5: cubic 1.125, combined 2.5 + 0.125 + 1.5*0.5*0.25
    CHECK(d2.cubic == doctest::Approx(1.125).epsilon(1e-14));
    CHECK(d2.combined == doctest::Approx(2.5 + 0.125 + 0.1875).epsilon(1e-14));

    // a level ordered the wrong way is flagged
    const LadderDifferences bad = ladder_difference_sum(fake_spectrum({-0.5}),
                                                        fake_spectrum({-1.0}), 1);
    CHECK(bad.ordering_violation);

    CHECK_THROWS_AS(ladder_difference_sum(sv, s0, 3), PreconditionViolated);
}

TEST_CASE("classical bound saturates on the reflectionless well") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(ClassicalLT{1.5}, PotentialSpec::zero(SpatialDomain::WholeLine),
               sech2_well(2.0, g), DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(rep.margin) < 1e-6);
    CHECK(rep.orientation == BoundOrientation::UpperBound);
    CHECK(rep.per_level_side == PerLevelSide::Lhs);
    CHECK(rep.levels_used == 1);
}

TEST_CASE("classical bound is strict off the sharp family") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(ClassicalLT{2.5}, PotentialSpec::zero(SpatialDomain::WholeLine),
               sech2_well(2.0, g), DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.margin > 0.01);
}

TEST_CASE("lower bound on the eigenvalue-root sum saturates on the reflectionless well") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep = verify(Schmincke{}, PotentialSpec::zero(SpatialDomain::WholeLine),
                                        sech2_well(2.0, g), DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-6));  // (1/4) int V
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-6));  // sum of sqrt(lambda)
    CHECK(rep.orientation == BoundOrientation::LowerBound);
    CHECK(rep.per_level_side == PerLevelSide::Rhs);
}

TEST_CASE("shifted bound over a sech^2 background: closed case") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(Theorem4{}, {SpatialDomain::WholeLine, PoschlTeller{1.0}}, sech2_well(4.0, g),
               DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.rhs == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(rep.margin == doctest::Approx(3.0).epsilon(1e-3));
    CHECK_FALSE(rep.ordering_violation);
}

TEST_CASE("ladder-depth bound: closed case with known error term") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(Proposition1{1}, {SpatialDomain::WholeLine, PoschlTeller{1.0}}, sech2_well(4.0, g),
               DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(2.5).epsilon(1e-4));
    CHECK(rep.rhs == doctest::Approx(3.5).epsilon(1e-4));
    REQUIRE(rep.error_term.has_value());
    CHECK(*rep.error_term == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("ladder-depth bound refuses when the ladder cannot reach K") {
    const Grid g = Grid::reference_whole_line();
    CHECK_THROWS_AS(verify(Proposition1{4}, {SpatialDomain::WholeLine, PoschlTeller{1.0}},
                           sech2_well(1.0, g), DecayAtInfinity{}, g),
                    PreconditionViolated);
}

TEST_CASE("Coulomb-background cubic bound holds on a shallow perturbation") {
    const Grid g = Grid::reference_half_line();
    const PotentialSpec v{SpatialDomain::HalfLine,
                          Tabulated{GridFunction::sample(g, [](double r) {
                              return 0.8 * std::exp(-(r - 2.0) * (r - 2.0));
                          })}};
    const InequalityReport rep = verify(Theorem3{4}, {SpatialDomain::HalfLine, Coulomb{0.5, 2.0}},
                                        v, Dirichlet{}, g);
    CHECK(rep.holds);
    CHECK(rep.margin >= 0.0);
    CHECK_FALSE(rep.ordering_violation);
}

TEST_CASE("half-line shifted bound needs a Robin boundary") {
    const Grid g = Grid::reference_half_line();
    const PotentialSpec v{SpatialDomain::HalfLine,
                          Tabulated{GridFunction::sample(g, [](double r) {
                              const double c = std::cosh(r - 1.0);
                              return 2.0 / (c * c);
                          })}};
    CHECK_THROWS_AS(verify(Theorem2{1.5}, PotentialSpec::zero(SpatialDomain::HalfLine), v,
                           Dirichlet{}, g),
                    PreconditionViolated);
    const InequalityReport rep = verify(Theorem2{1.5}, PotentialSpec::zero(SpatialDomain::HalfLine),
                                        v, Robin{-0.5}, g);
    CHECK(rep.holds);
    REQUIRE(rep.sigma.has_value());
    CHECK(*rep.sigma == -0.5);
}

TEST_CASE("identity-defect report for computed spectra") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(AizenmanLieb{3.0, 3.0}, PotentialSpec::zero(SpatialDomain::WholeLine),
               sech2_well(2.0, g), DecayAtInfinity{}, g);
    CHECK(rep.holds);
    CHECK(rep.lhs < 1e-8);
    CHECK(rep.per_level_side == PerLevelSide::LhsMax);
}

TEST_CASE("domain preconditions are enforced") {
    const Grid w = Grid::reference_whole_line();
    const Grid h = Grid::reference_half_line();
    const PotentialSpec vw = sech2_well(2.0, w);
    CHECK_THROWS_AS(verify(ClassicalLT{1.0}, PotentialSpec::zero(SpatialDomain::WholeLine), vw,
                           DecayAtInfinity{}, w),
                    PreconditionViolated);  // gamma below 3/2
    CHECK_THROWS_AS(verify(Theorem1{1.5}, {SpatialDomain::HalfLine, Coulomb{0.0, 2.0}},
                           PotentialSpec::zero(SpatialDomain::HalfLine), Dirichlet{}, h),
                    PreconditionViolated);  // whole-line statement
    CHECK_THROWS_AS(verify(Theorem3{4}, {SpatialDomain::WholeLine, PoschlTeller{1.0}}, vw,
                           DecayAtInfinity{}, w),
                    PreconditionViolated);  // needs a Coulomb background
}

TEST_CASE("per-level contributions add up to the labeled side") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(ClassicalLT{1.5}, PotentialSpec::zero(SpatialDomain::WholeLine),
               sech2_well(6.0, g), DecayAtInfinity{}, g);
    double total = 0.0;
    for (const auto& [k, c] : rep.per_level) total += c;
    CHECK(total == doctest::Approx(rep.lhs).epsilon(1e-12));
}

TEST_CASE("report serialization is valid JSON with a stable key set") {
    const Grid g = Grid::reference_whole_line();
    const InequalityReport rep =
        verify(Theorem4{}, {SpatialDomain::WholeLine, PoschlTeller{1.0}}, sech2_well(4.0, g),
               DecayAtInfinity{}, g);
    const nlohmann::json j = nlohmann::json::parse(to_json(rep));
    for (const char* key : {"name", "params", "lhs", "rhs", "margin", "holds", "slack",
                            "orientation", "per_level", "per_level_side", "error_term",
                            "ordering_violation", "grid", "tolerance", "levels_used"})
        CHECK(j.contains(key));
    CHECK(j["name"] == report_name(Theorem4{}));
    CHECK(j["holds"].is_boolean());
    CHECK(j["margin"].get<double>() == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(j["grid"]["n_points"] == g.n_points);
}

TEST_CASE("report names are distinct and human-readable") {
    CHECK(report_name(ClassicalLT{}) != report_name(Theorem1{}));
    CHECK(report_name(Theorem2{}) != report_name(Theorem1{}));
    CHECK_FALSE(report_name(Schmincke{}).empty());
    CHECK_FALSE(report_name(AizenmanLieb{}).empty());
}
