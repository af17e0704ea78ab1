#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specbound/commutation.hpp"

using namespace specbound;

namespace {

PotentialSpec pt(double nu) { return {SpatialDomain::WholeLine, PoschlTeller{nu}}; }

PotentialSpec sech2_well(double depth, const Grid& g) {
    return {SpatialDomain::WholeLine, Tabulated{GridFunction::sample(g, [depth](double x) {
                const double c = std::cosh(x);
                return depth / (c * c);
            })}};
}

double window_sup_error(const GridFunction& f, const std::function<double(double)>& ref) {
    double worst = 0.0;
    for (int i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(f[i] - ref(f.grid.point(i))));
    return worst;
}

}  // namespace

TEST_CASE("ground-state log-derivative of the nu=2 well is -2 tanh") {
    const Grid g = Grid::reference_whole_line();
    const auto [e, u] = ground_state(make_problem(pt(2.0), DecayAtInfinity{}, g));
    const GridFunction gd = log_derivative(u, {-14.0, 14.0});
    CHECK(window_sup_error(gd, [](double x) { return -2.0 * std::tanh(x); }) < 1e-6);
}

TEST_CASE("one ladder step maps the nu=2 well to the nu=1 well") {
    const Grid g = Grid::reference_whole_line();
    const Ladder lad =
        build_ladder(pt(2.0), PotentialSpec::zero(SpatialDomain::WholeLine),
                     DecayAtInfinity{}, g, 1);
    REQUIRE(lad.completed);
    REQUIRE(lad.steps.size() == 1);
    const LadderStep& st = lad.steps[0];
    CHECK(st.mu_k == doctest::Approx(4.0).epsilon(1e-6));

    // lifted well is 2 sech^2 on the interior window
    double worst = 0.0;
    const GridFunction& lifted = st.lifted_V0;
    for (int i = 0; i < lifted.size(); ++i) {
        const double x = lifted.grid.point(i);
        if (std::abs(x) > 14.0) continue;
        const double c = std::cosh(x);
        worst = std::max(worst, std::abs(lifted[i] - 2.0 / (c * c)));
    }
    CHECK(worst < 1e-3);

    // and its spectrum is exactly one level at -1
    const Spectrum s = solve_spectrum(
        make_problem({SpatialDomain::WholeLine, Tabulated{lifted}}, DecayAtInfinity{}, g), 4);
    REQUIRE(s.count_found == 1);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("one ladder step on the Coulomb well reproduces the shifted family member") {
    const Grid g = Grid::reference_half_line();
    const Ladder lad =
        build_ladder({SpatialDomain::HalfLine, Coulomb{0.0, 2.0}},
                     PotentialSpec::zero(SpatialDomain::HalfLine), Dirichlet{}, g, 1);
    REQUIRE(lad.completed);
    const GridFunction& lifted = lad.steps[0].lifted_V0;
    // -W^(2) = 2/r^2 - 2/r, i.e. the nu=1, kappa=2 member
    double worst = 0.0;
    for (int i = 0; i < lifted.size(); ++i) {
        const double r = lifted.grid.point(i);
        if (r < 0.5 || r > 45.0) continue;
        worst = std::max(worst, std::abs(lifted[i] - (2.0 / r - 2.0 / (r * r))));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("perturbed factorizer for the 2sech^2 -> 6sech^2 pair is -tanh") {
    const Grid g = Grid::reference_whole_line();
    const Ladder lad = build_ladder(pt(1.0), sech2_well(4.0, g), DecayAtInfinity{}, g, 1);
    REQUIRE(lad.completed);
    const LadderStep& st = lad.steps[0];
    CHECK(st.mu_k == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(st.lambda_k == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(window_sup_error(st.f_k, [](double x) { return -std::tanh(x); }) < 1e-4);

    // error term: int g' f^2 = -int sech^2 tanh^2 = -2/3
    REQUIRE(lad.error_terms.size() == 1);
    CHECK(lad.error_terms[0] == doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("Riccati residuals are small on accepted steps") {
    const Grid g = Grid::reference_whole_line();
    const Ladder lad = build_ladder(pt(2.0), sech2_well(3.0, g), DecayAtInfinity{}, g, 2);
    REQUIRE(lad.completed);
    for (const LadderStep& st : lad.steps) {
        CHECK(st.riccati_residual_g <= 1e-3);
        CHECK(st.riccati_residual_f <= 1e-3);
        CHECK(st.asymptotic_ok);
    }
}

TEST_CASE("a zero perturbation factorizes trivially") {
    const Grid g = Grid::reference_whole_line();
    const Ladder lad = build_ladder(pt(2.0), PotentialSpec::zero(SpatialDomain::WholeLine),
                                    DecayAtInfinity{}, g, 2);
    REQUIRE(lad.completed);
    for (const LadderStep& st : lad.steps) {
        CHECK(st.lambda_k == doctest::Approx(st.mu_k).epsilon(1e-8));
        CHECK(sup_norm(st.f_k) < 1e-6);
    }
    for (double e : lad.error_terms) CHECK(std::abs(e) < 1e-6);
}

TEST_CASE("exhausting the background spectrum stops the ladder in-band") {
    const Grid g = Grid::reference_whole_line();
    // nu = 1.2 has two levels; asking for three steps must stop after two
    const Ladder lad = build_ladder(pt(1.2), PotentialSpec::zero(SpatialDomain::WholeLine),
                                    DecayAtInfinity{}, g, 3);
    CHECK_FALSE(lad.completed);
    CHECK(lad.K == 2);
    CHECK(lad.steps.size() == 2);
    CHECK_FALSE(lad.breakdown_reason.empty());
}

TEST_CASE("log-concavity of single-well ground states, and its failure mode") {
    const Grid g = Grid::reference_whole_line();
    SUBCASE("single well: g' <= 0 within tolerance") {
        const auto [e, u] = ground_state(make_problem(pt(2.7), DecayAtInfinity{}, g));
        const GridFunction gd = log_derivative(u, {-12.0, 12.0});
        const LogConcavityReport rep = check_log_concavity(gd, 1e-6);
        CHECK(rep.log_concave);
        CHECK(rep.worst < 1e-6);
    }
    SUBCASE("double well: g' > 0 between the wells") {
        const PotentialSpec dw{SpatialDomain::WholeLine, DoubleWell{2.0, 3.0}};
        const auto [e, u] = ground_state(make_problem(dw, DecayAtInfinity{}, g));
        const GridFunction gd = log_derivative(u, {-12.0, 12.0});
        const LogConcavityReport rep = check_log_concavity(gd, 1e-6);
        CHECK_FALSE(rep.log_concave);
        CHECK(rep.worst > 1e-3);
        CHECK(std::abs(rep.location) < 3.0);  // the violation sits near the barrier
    }
}

TEST_CASE("Robin boundary data propagates into the first factorizer pair") {
    const Grid g = Grid::reference_half_line();
    const PotentialSpec v0{SpatialDomain::HalfLine,
                           Tabulated{GridFunction::sample(g, [](double r) {
                               return 3.0 * std::exp(-0.7 * r);
                           })}};
    const PotentialSpec v{SpatialDomain::HalfLine,
                          Tabulated{GridFunction::sample(g, [](double r) {
                              const double c = std::cosh(r);
                              return 1.5 / (c * c);
                          })}};
    const double sigma = -0.8;
    const Ladder lad = build_ladder(v0, v, Robin{sigma}, g, 1);
    REQUIRE(lad.completed);
    CHECK(extrapolate_to_origin(lad.steps[0].g_k) == doctest::Approx(sigma).epsilon(1e-3));
    CHECK(std::abs(extrapolate_to_origin(lad.steps[0].f_k)) < 1e-3);
}

TEST_CASE("residual helpers accept analytic data") {
    // g = -tanh solves g' = mu - V0 - g^2 with mu = 1, V0 = 2 sech^2
    const Grid g(-10.0, 10.0, 2001);
    const GridFunction gd = GridFunction::sample(g, [](double x) { return -std::tanh(x); });
    const GridFunction v0 = GridFunction::sample(g, [](double x) {
        const double c = std::cosh(x);
        return 2.0 / (c * c);
    });
    CHECK(riccati_residual_g(gd, v0, 1.0) < 1e-7);
}
