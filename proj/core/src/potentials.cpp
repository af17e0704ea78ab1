#include "specbound/potentials.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace specbound {
namespace {

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

void validate_family(SpatialDomain domain, const PotentialFamily& family) {
    if (const auto* pt = std::get_if<PoschlTeller>(&family)) {
        if (!(pt->nu > 0)) throw std::invalid_argument("PoschlTeller: nu must be > 0");
        if (domain != SpatialDomain::WholeLine)
            throw std::invalid_argument("PoschlTeller: whole-line family");
    } else if (const auto* c = std::get_if<Coulomb>(&family)) {
        if (!(c->kappa > 0)) throw std::invalid_argument("Coulomb: kappa must be > 0");
        if (!(c->nu >= -0.5)) throw std::invalid_argument("Coulomb: nu must be >= -1/2");
        if (domain != SpatialDomain::HalfLine)
            throw std::invalid_argument("Coulomb: half-line family");
    } else if (const auto* s = std::get_if<SquareWell>(&family)) {
        if (!(s->depth > 0) || !(s->half_width > 0))
            throw std::invalid_argument("SquareWell: depth and half_width must be > 0");
    } else if (const auto* g = std::get_if<Gaussian>(&family)) {
        if (!(g->depth >= 0) || !(g->width > 0))
            throw std::invalid_argument("Gaussian: depth must be >= 0, width > 0");
    } else if (const auto* d = std::get_if<DoubleWell>(&family)) {
        if (!(d->nu > 0) || !(d->separation > 0))
            throw std::invalid_argument("DoubleWell: nu and separation must be > 0");
        if (domain != SpatialDomain::WholeLine)
            throw std::invalid_argument("DoubleWell: whole-line family");
    }
}

}  // namespace

PotentialSpec::PotentialSpec(SpatialDomain d, PotentialFamily f)
    : domain(d), family(std::move(f)) {
    validate_family(domain, family);
}

PotentialSpec PotentialSpec::zero(SpatialDomain d) {
    PotentialSpec p;
    p.domain = d;
    p.family = Gaussian{0.0, 1.0};
    return p;
}

bool PotentialSpec::is_zero() const {
    const auto* g = std::get_if<Gaussian>(&family);
    return g != nullptr && g->depth == 0.0;
}

double evaluate(const PotentialSpec& p, double x) {
    if (p.domain == SpatialDomain::HalfLine && !(x > 0))
        throw DomainError("evaluate: half-line potential needs x > 0");
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PoschlTeller>) {
                return f.nu * (f.nu + 1.0) * sech2(x);
            } else if constexpr (std::is_same_v<T, Coulomb>) {
                return f.kappa / x - f.nu * (f.nu + 1.0) / (x * x);
            } else if constexpr (std::is_same_v<T, SquareWell>) {
                return std::abs(x) <= f.half_width ? f.depth : 0.0;
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                const double t = x / f.width;
                return f.depth * std::exp(-t * t);
            } else if constexpr (std::is_same_v<T, DoubleWell>) {
                return f.nu * (f.nu + 1.0) *
                       (sech2(x - f.separation) + sech2(x + f.separation));
            } else {
                // Tabulated: answer only at grid nodes.
                const Grid& g = f.table.grid;
                const double h = g.spacing();
                const double idx = (x - g.x_min) / h;
                const int i = int(std::lround(idx));
                if (i < 0 || i >= g.n_points || std::abs(idx - double(i)) > 1e-6)
                    throw DomainError("evaluate: x is not a node of the tabulated grid");
                return f.table[i];
            }
        },
        p.family);
}

GridFunction sample_on_grid(const PotentialSpec& p, const Grid& grid) {
    if (const auto* t = std::get_if<Tabulated>(&p.family)) {
        if (!(t->table.grid == grid))
            throw std::invalid_argument("sample_on_grid: tabulated potential is pinned to its own grid");
        return t->table;
    }
    return GridFunction::sample(grid, [&](double x) { return evaluate(p, x); });
}

std::vector<double> closed_form_levels(const PotentialSpec& p, int k_max) {
    if (k_max < 1) throw std::invalid_argument("closed_form_levels: k_max must be >= 1");
    if (const auto* pt = std::get_if<PoschlTeller>(&p.family)) {
        const int count = int(std::ceil(pt->nu));
        std::vector<double> levels;
        for (int k = 1; k <= std::min(count, k_max); ++k) {
            const double s = pt->nu - double(k) + 1.0;
            levels.push_back(-s * s);
        }
        return levels;
    }
    if (const auto* c = std::get_if<Coulomb>(&p.family)) {
        std::vector<double> levels;
        for (int k = 1; k <= k_max; ++k) {
            const double d = 2.0 * (c->nu + double(k));
            levels.push_back(-c->kappa * c->kappa / (d * d));
        }
        return levels;
    }
    throw UnsupportedFamily("closed_form_levels: only PoschlTeller and Coulomb have closed forms");
}

double positive_part_moment(const PotentialSpec& p, double exponent, const Grid& grid) {
    if (!(exponent > 0)) throw std::invalid_argument("positive_part_moment: exponent must be > 0");
    GridFunction v = sample_on_grid(p, grid);
    for (double& y : v.values) y = y > 0 ? std::pow(y, exponent) : 0.0;
    return integrate(v);
}

OriginStructure origin_structure(const PotentialSpec& p) {
    if (p.domain != SpatialDomain::HalfLine)
        throw std::invalid_argument("origin_structure: half-line potentials only");
    if (const auto* c = std::get_if<Coulomb>(&p.family))
        return {c->nu + 1.0, c->kappa};
    if (const auto* t = std::get_if<Tabulated>(&p.family)) {
        // V ~ -A/r^2 + B/r + O(1) near 0; two nodes separate A and B exactly
        // for the singular parts (the regular remainder contaminates A only
        // at O(r1*r2)).
        const double r1 = t->table.grid.x_min;
        const double r2 = t->table.grid.point(1);
        const double w1 = t->table[0], w2 = t->table[1];
        const double B = (w2 * r2 * r2 - w1 * r1 * r1) / (r2 - r1);
        const double A = std::max(-0.24, B * r1 - w1 * r1 * r1);
        const double q = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * A));
        return {q, std::clamp(B, -100.0, 100.0)};
    }
    return {1.0, 0.0};
}

void save_tabulated(const std::string& path, const GridFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tabulated: cannot open " + path);
    out.precision(17);
    for (int i = 0; i < f.size(); ++i) out << f.grid.point(i) << ' ' << f[i] << '\n';
    if (!out) throw std::runtime_error("save_tabulated: write failed for " + path);
}

GridFunction load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_tabulated: cannot open " + path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double x, v;
        if (!(row >> x >> v)) throw std::runtime_error("load_tabulated: bad row: " + line);
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 3) throw std::runtime_error("load_tabulated: need at least 3 rows");
    const double h = xs[1] - xs[0];
    if (!(h > 0)) throw std::runtime_error("load_tabulated: x must increase");
    for (size_t i = 1; i < xs.size(); ++i) {
        const double step = xs[i] - xs[i - 1];
        if (std::abs(step - h) > 1e-6 * std::max(1.0, std::abs(h)))
            throw std::runtime_error("load_tabulated: non-uniform spacing");
    }
    Grid grid(xs.front(), xs.back(), int(xs.size()));
    return GridFunction(grid, std::move(vs));
}

void validate_boundary(SpatialDomain domain, const BoundaryCondition& bc) {
    const bool origin_bc = !std::holds_alternative<DecayAtInfinity>(bc);
    if (domain == SpatialDomain::WholeLine && origin_bc)
        throw std::invalid_argument("whole-line problems take DecayAtInfinity");
    if (domain == SpatialDomain::HalfLine && !origin_bc)
        throw std::invalid_argument("half-line problems take Dirichlet or Robin at the origin");
}

bool is_dirichlet(const BoundaryCondition& bc) {
    return std::holds_alternative<Dirichlet>(bc);
}

std::optional<double> robin_sigma(const BoundaryCondition& bc) {
    if (const auto* r = std::get_if<Robin>(&bc)) return r->sigma;
    return std::nullopt;
}

}  // namespace specbound
