#include "specbound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace specbound {

Grid::Grid(double lo, double hi, int n) : x_min(lo), x_max(hi), n_points(n) {
    if (!(lo < hi)) throw std::invalid_argument("Grid: x_min must be < x_max");
    if (n < 3) throw std::invalid_argument("Grid: need at least 3 points");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("Grid: endpoints must be finite");
}

GridFunction::GridFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (int(values.size()) != grid.n_points)
        throw std::invalid_argument("GridFunction: value count does not match grid");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(size_t(g.n_points));
    for (int i = 0; i < g.n_points; ++i) v[size_t(i)] = f(g.point(i));
    return GridFunction(g, std::move(v));
}

GridFunction GridFunction::restrict_to(int i_lo, int i_hi) const {
    if (i_lo < 0 || i_hi >= grid.n_points || i_hi - i_lo + 1 < 3)
        throw std::invalid_argument("restrict_to: bad index range");
    Grid sub(grid.point(i_lo), grid.point(i_hi), i_hi - i_lo + 1);
    return GridFunction(sub, {values.begin() + i_lo, values.begin() + i_hi + 1});
}

double integrate(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing();
    const int panels = n - 1;
    const int simpson_panels = (panels % 2 == 0) ? panels : panels - 1;

    double sum = 0.0;
    if (simpson_panels > 0) {
        sum = f[0] + f[simpson_panels];
        for (int i = 1; i < simpson_panels; i += 2) sum += 4.0 * f[i];
        for (int i = 2; i < simpson_panels; i += 2) sum += 2.0 * f[i];
        sum *= h / 3.0;
    }
    if (simpson_panels != panels) sum += 0.5 * h * (f[n - 2] + f[n - 1]);
    return sum;
}

GridFunction differentiate(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing();
    std::vector<double> d(size_t(n), 0.0);

    if (n < 5) {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for (int i = 1; i < n - 1; ++i) d[size_t(i)] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        d[size_t(n - 1)] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        return GridFunction(f.grid, std::move(d));
    }

    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (int i = 2; i < n - 2; ++i)
        d[size_t(i)] = c * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
    d[size_t(n - 2)] =
        -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
    d[size_t(n - 1)] =
        -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
    return GridFunction(f.grid, std::move(d));
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("bisect_root: tol must be positive");
    if (a > b) std::swap(a, b);
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw NoSignChange("bisect_root: no sign change on bracket");
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // spacing exhausted
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_difference(const GridFunction& f, const std::function<double(double)>& g) {
    double m = 0.0;
    for (int i = 0; i < f.size(); ++i)
        m = std::max(m, std::abs(f[i] - g(f.grid.point(i))));
    return m;
}

}  // namespace specbound
