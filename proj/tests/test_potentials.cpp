#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "specbound/potentials.hpp"

using namespace specbound;

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::WholeLine, PoschlTeller{0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::WholeLine, PoschlTeller{-1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::HalfLine, Coulomb{-0.6, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::HalfLine, Coulomb{0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::WholeLine, Coulomb{0.0, 2.0}),
                    std::invalid_argument);  // Coulomb needs the half line
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::WholeLine, SquareWell{-1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec(SpatialDomain::WholeLine, Gaussian{1.0, 0.0}),
                    std::invalid_argument);
    CHECK_NOTHROW(PotentialSpec(SpatialDomain::HalfLine, Coulomb{-0.5, 1.0}));
}

TEST_CASE("pointwise evaluation matches the defining formulas") {
    const PotentialSpec pt(SpatialDomain::WholeLine, PoschlTeller{2.0});
    CHECK(evaluate(pt, 0.0) == doctest::Approx(6.0).epsilon(1e-14));
    const double c = std::cosh(1.5);
    CHECK(evaluate(pt, 1.5) == doctest::Approx(6.0 / (c * c)).epsilon(1e-14));

    const PotentialSpec cl(SpatialDomain::HalfLine, Coulomb{1.0, 3.0});
    // -W = nu(nu+1)/r^2 - kappa/r, so W = kappa/r - nu(nu+1)/r^2
    CHECK(evaluate(cl, 2.0) == doctest::Approx(3.0 / 2.0 - 2.0 / 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate(cl, -1.0), DomainError);

    const PotentialSpec sq(SpatialDomain::WholeLine, SquareWell{5.0, 1.5});
    CHECK(evaluate(sq, 0.0) == 5.0);
    CHECK(evaluate(sq, 2.0) == 0.0);

    const PotentialSpec dw(SpatialDomain::WholeLine, DoubleWell{2.0, 3.0});
    const double expected = 6.0 / std::pow(std::cosh(-3.0), 2) + 6.0 / std::pow(std::cosh(3.0), 2);
    CHECK(evaluate(dw, 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("closed-form levels for the exactly solvable families") {
    SUBCASE("sech^2 wells: levels -(nu - k + 1)^2") {
        const auto l2 = closed_form_levels(PotentialSpec(SpatialDomain::WholeLine,
                                                         PoschlTeller{2.0}), 8);
        REQUIRE(l2.size() == 2);
        CHECK(l2[0] == doctest::Approx(-4.0).epsilon(1e-14));
        CHECK(l2[1] == doctest::Approx(-1.0).epsilon(1e-14));

        const auto l35 = closed_form_levels(PotentialSpec(SpatialDomain::WholeLine,
                                                          PoschlTeller{3.5}), 8);
        REQUIRE(l35.size() == 4);
        CHECK(l35[0] == doctest::Approx(-12.25).epsilon(1e-14));
        CHECK(l35[3] == doctest::Approx(-0.25).epsilon(1e-14));
    }
    SUBCASE("Coulomb wells: levels -kappa^2/(4 (nu + k)^2)") {
        const auto l = closed_form_levels(PotentialSpec(SpatialDomain::HalfLine,
                                                        Coulomb{0.0, 2.0}), 3);
        REQUIRE(l.size() == 3);
        CHECK(l[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(l[1] == doctest::Approx(-0.25).epsilon(1e-14));
        CHECK(l[2] == doctest::Approx(-1.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("families without closed forms refuse") {
        CHECK_THROWS_AS(closed_form_levels(PotentialSpec(SpatialDomain::WholeLine,
                                                         Gaussian{1.0, 1.0}), 3),
                        UnsupportedFamily);
    }
}

TEST_CASE("zero spec") {
    const PotentialSpec z = PotentialSpec::zero(SpatialDomain::WholeLine);
    CHECK(z.is_zero());
    CHECK(evaluate(z, 0.3) == 0.0);
    CHECK_FALSE(PotentialSpec(SpatialDomain::WholeLine, PoschlTeller{1.0}).is_zero());
}

TEST_CASE("tabulated potentials round-trip through files") {
    const Grid g(-2.0, 2.0, 41);
    const GridFunction f =
        GridFunction::sample(g, [](double x) { return std::exp(-x * x) * 3.0; });
    const std::string path = (std::filesystem::temp_directory_path() / "tab_roundtrip.dat").string();
    save_tabulated(path, f);
    const GridFunction r = load_tabulated(path);
    REQUIRE(r.grid == f.grid);
    for (int i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(f[i]).epsilon(1e-12));
    std::remove(path.c_str());

    const PotentialSpec tab(SpatialDomain::WholeLine, Tabulated{f});
    CHECK(evaluate(tab, g.point(3)) == doctest::Approx(f[3]).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate(tab, 0.123456789), DomainError);  // off-node query
}

TEST_CASE("sampling a spec onto a grid") {
    const Grid g(-5.0, 5.0, 201);
    const PotentialSpec pt(SpatialDomain::WholeLine, PoschlTeller{1.0});
    const GridFunction w = sample_on_grid(pt, g);
    for (int i = 0; i < w.size(); ++i)
        CHECK(w[i] == doctest::Approx(evaluate(pt, g.point(i))).epsilon(1e-14));
}
