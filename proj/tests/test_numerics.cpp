#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "specbound/numerics.hpp"

using namespace specbound;

namespace {
double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}
}  // namespace

TEST_CASE("grid validates its parameters") {
    CHECK_THROWS_AS(Grid(1.0, 0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(Grid(0.0, 1.0, 1), std::invalid_argument);
    const Grid g(-1.0, 1.0, 201);
    CHECK(g.spacing() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g.point(0) == -1.0);
    CHECK(g.point(200) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("reference grids") {
    const Grid w = Grid::reference_whole_line();
    CHECK(w.x_min == -20.0);
    CHECK(w.x_max == 20.0);
    CHECK(w.n_points == 4001);
    const Grid h = Grid::reference_half_line();
    CHECK(h.x_min == 0.01);
    CHECK(h.x_max == 60.0);
    CHECK(h.n_points == 6000);
}

TEST_CASE("quadrature reproduces analytic integrals") {
    const Grid g = Grid::reference_whole_line();
    // int sech^2 = 2, int sech^4 = 4/3, int exp(-x^2) = sqrt(pi)
    CHECK(integrate(GridFunction::sample(g, sech2)) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(integrate(GridFunction::sample(g, [](double x) { return sech2(x) * sech2(x); })) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    CHECK(integrate(GridFunction::sample(g, [](double x) { return std::exp(-x * x); })) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("differentiation is high-order accurate") {
    const Grid g = Grid::reference_whole_line();
    const GridFunction t = GridFunction::sample(g, [](double x) { return std::tanh(x); });
    const GridFunction d = differentiate(t);
    CHECK(max_abs_difference(d, sech2) < 1e-8);

    // polynomials up to cubic are differentiated exactly (up to roundoff)
    const GridFunction p =
        GridFunction::sample(g, [](double x) { return ((x - 1.0) * x + 2.0) * x - 5.0; });
    const GridFunction dp = differentiate(p);
    CHECK(max_abs_difference(dp, [](double x) { return (3.0 * x - 2.0) * x + 2.0; }) < 1e-8);
}

TEST_CASE("bisection locates roots to tight tolerance") {
    const double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-14),
                    NoSignChange);
}

TEST_CASE("sup norm and function comparison") {
    const Grid g(-1.0, 1.0, 101);
    const GridFunction f = GridFunction::sample(g, [](double x) { return x; });
    CHECK(sup_norm(f) == doctest::Approx(1.0));
    CHECK(max_abs_difference(f, [](double x) { return x; }) == 0.0);
}

TEST_CASE("restriction to a subwindow keeps node values") {
    const Grid g(0.0, 1.0, 101);
    const GridFunction f = GridFunction::sample(g, [](double x) { return x * x; });
    const GridFunction r = f.restrict_to(10, 20);
    CHECK(r.size() == 11);
    CHECK(r.grid.x_min == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(r.grid.x_max == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(r[0] == doctest::Approx(0.01).epsilon(1e-14));
}
