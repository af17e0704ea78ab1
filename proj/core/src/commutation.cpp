#include "specbound/commutation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace specbound {

namespace {

constexpr double kAsymptoticTol = 1e-2;

int index_at(const Grid& grid, double x, bool round_up) {
    double t = (x - grid.x_min) / grid.spacing();
    int i = round_up ? int(std::ceil(t - 1e-9)) : int(std::floor(t + 1e-9));
    return std::clamp(i, 0, grid.n_points - 1);
}

Window window_indices(const Grid& grid, const WindowBounds& wb) {
    if (!(wb.first < wb.second))
        throw std::invalid_argument("window bounds must satisfy x_lo < x_hi");
    if (wb.first < grid.x_min - 1e-9 || wb.second > grid.x_max + 1e-9)
        throw std::invalid_argument("window must lie inside the grid");
    Window w{index_at(grid, wb.first, true), index_at(grid, wb.second, false)};
    if (w.size() < 5) throw std::invalid_argument("window too short (need >= 5 grid points)");
    return w;
}

Grid subgrid(const Grid& grid, const Window& w) {
    return Grid(grid.point(w.i_lo), grid.point(w.i_hi), w.size());
}

// Slices f onto `sub`, whose nodes must be nodes of f's grid.
GridFunction align_to(const Grid& sub, const GridFunction& f) {
    if (sub == f.grid) return f;
    double h = f.grid.spacing();
    if (std::abs(sub.spacing() - h) > 1e-9 * h)
        throw std::invalid_argument("grid spacings do not match");
    double t = (sub.x_min - f.grid.x_min) / h;
    int off = int(std::lround(t));
    if (std::abs(t - double(off)) > 1e-6 || off < 0 || off + sub.n_points > f.grid.n_points)
        throw std::invalid_argument("window nodes are not nodes of the sampled grid");
    return f.restrict_to(off, off + sub.n_points - 1);
}

bool same_nodes(const Grid& a, const Grid& b) {
    return a.n_points == b.n_points && std::abs(a.x_min - b.x_min) <= 1e-9 &&
           std::abs(a.x_max - b.x_max) <= 1e-9;
}

}  // namespace

GridFunction log_derivative(const GridFunction& u, const WindowBounds& window, double pole_order) {
    Window w = window_indices(u.grid, window);
    if (pole_order != 0.0 && u.grid.point(w.i_lo) <= 0.0)
        throw std::invalid_argument("pole subtraction needs x > 0 on the window");
    std::vector<double> logs(size_t(w.size()));
    for (int i = w.i_lo; i <= w.i_hi; ++i) {
        double ui = u[i];
        if (!(ui > 0.0))
            throw NonPositiveGroundState("wave function must be positive on the window");
        double wi = std::log(ui);
        if (pole_order != 0.0) wi -= pole_order * std::log(u.grid.point(i));
        logs[size_t(i - w.i_lo)] = wi;
    }
    GridFunction d = differentiate(GridFunction(subgrid(u.grid, w), std::move(logs)));
    if (pole_order != 0.0)
        for (int i = 0; i < d.size(); ++i) d[i] += pole_order / d.grid.point(i);
    return d;
}

double riccati_residual_g(const GridFunction& g, const GridFunction& V0, double mu) {
    GridFunction v0 = align_to(g.grid, V0);
    GridFunction gp = differentiate(g);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(gp[i] - (mu - v0[i] - g[i] * g[i])));
    return worst;
}

GridFunction perturbed_factorizer(const GridFunction& psi, const GridFunction& g,
                                  const WindowBounds& window, double pole_order) {
    GridFunction ld = log_derivative(psi, window, pole_order);
    if (!same_nodes(ld.grid, g.grid))
        throw std::invalid_argument("factorizer window must coincide with g's subgrid");
    std::vector<double> vals(size_t(g.size()));
    for (int i = 0; i < g.size(); ++i) vals[size_t(i)] = ld[i] - g[i];
    return GridFunction(g.grid, std::move(vals));
}

double riccati_residual_f(const GridFunction& f, const GridFunction& g, const GridFunction& V,
                          double lambda, double mu) {
    if (!same_nodes(f.grid, g.grid))
        throw std::invalid_argument("f and g must share a window");
    GridFunction v = align_to(f.grid, V);
    GridFunction fp = differentiate(f);
    double worst = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        double rhs = lambda - mu - v[i] - f[i] * f[i] - 2.0 * g[i] * f[i];
        worst = std::max(worst, std::abs(fp[i] - rhs));
    }
    return worst;
}

std::pair<GridFunction, GridFunction> lift_once(const GridFunction& V0, const GridFunction& V,
                                                const GridFunction& g, const GridFunction& f) {
    if (!(V0.grid == V.grid)) throw std::invalid_argument("V0 and V must share a grid");
    auto lifted = [&](const GridFunction& base, const GridFunction& w) {
        double h = base.grid.spacing();
        if (std::abs(w.grid.spacing() - h) > 1e-9 * h)
            throw std::invalid_argument("window spacing does not match the potential grid");
        double t = (w.grid.x_min - base.grid.x_min) / h;
        int off = int(std::lround(t));
        if (std::abs(t - double(off)) > 1e-6 || off < 0 || off + w.size() > base.size())
            throw std::invalid_argument("window is not a subgrid of the potential grid");
        GridFunction dw = differentiate(w);
        GridFunction out = base;
        // constant extension outside the window: derivative vanishes there
        for (int i = 0; i < w.size(); ++i) out[off + i] += 2.0 * dw[i];
        return out;
    };
    return {lifted(V0, g), lifted(V, f)};
}

LogConcavityReport check_log_concavity(const GridFunction& g, double tol) {
    GridFunction d = differentiate(g);
    LogConcavityReport report;
    int arg = 0;
    report.worst = d[0];
    for (int i = 1; i < d.size(); ++i)
        if (d[i] > report.worst) {
            report.worst = d[i];
            arg = i;
        }
    report.location = d.grid.point(arg);
    report.log_concave = report.worst <= tol;
    return report;
}

double extrapolate_to_origin(const GridFunction& f) {
    if (f.size() < 3) throw std::invalid_argument("need at least three points to extrapolate");
    double x0 = f.grid.point(0), x1 = f.grid.point(1), x2 = f.grid.point(2);
    double l0 = (x1 * x2) / ((x0 - x1) * (x0 - x2));
    double l1 = (x0 * x2) / ((x1 - x0) * (x1 - x2));
    double l2 = (x0 * x1) / ((x2 - x0) * (x2 - x1));
    return f[0] * l0 + f[1] * l1 + f[2] * l2;
}

namespace {

struct LogSlopeData {
    std::vector<double> first;   // d/dx log(u x^-q), constant-extended to the full grid
    std::vector<double> second;  // its derivative, zero-extended
};

LogSlopeData log_slope_data(const GridFunction& u, int i_lo, int i_hi, double q) {
    const Grid& grid = u.grid;
    int m = i_hi - i_lo + 1;
    std::vector<double> w(size_t(m), 0.0);
    for (int i = i_lo; i <= i_hi; ++i) {
        double ui = u[i];
        if (!(ui > 0.0))
            throw NonPositiveGroundState("ground state must be positive on the evaluation window");
        double wi = std::log(ui);
        if (q != 0.0) wi -= q * std::log(grid.point(i));
        w[size_t(i - i_lo)] = wi;
    }
    GridFunction wp = differentiate(GridFunction(Grid(grid.point(i_lo), grid.point(i_hi), m),
                                                 std::move(w)));
    GridFunction wpp = differentiate(wp);
    LogSlopeData d;
    d.first.assign(size_t(grid.n_points), 0.0);
    d.second.assign(size_t(grid.n_points), 0.0);
    for (int i = 0; i < i_lo; ++i) d.first[size_t(i)] = wp[0];
    for (int i = i_lo; i <= i_hi; ++i) {
        d.first[size_t(i)] = wp[i - i_lo];
        d.second[size_t(i)] = wpp[i - i_lo];
    }
    for (int i = i_hi + 1; i < grid.n_points; ++i) d.first[size_t(i)] = wp[m - 1];
    return d;
}

}  // namespace

Ladder build_ladder(const PotentialSpec& v0, const PotentialSpec& v, const BoundaryCondition& bc,
                    const Grid& grid, int K) {
    validate_boundary(v0.domain, bc);
    if (v0.domain != v.domain) throw std::invalid_argument("V0 and V must share a domain");
    if (K < 1) throw std::invalid_argument("ladder depth K must be at least 1");

    const bool half_line = v0.domain == SpatialDomain::HalfLine;
    const int n = grid.n_points;
    const double r1 = grid.x_min;

    // Step-1 problems carry the origin/tail structure of the potential
    // families; later steps update that structure analytically.
    ShootingProblem proto0 = make_problem(v0, bc, grid);
    ShootingProblem proto = make_problem(v0, v, bc, grid);
    std::vector<double> well0 = proto0.well;  // V0 + (k-1 lifts)
    std::vector<double> pert(size_t(n), 0.0);      // V + (k-1 lifts)
    for (int i = 0; i < n; ++i) pert[size_t(i)] = proto.well[size_t(i)] - well0[size_t(i)];

    double q = (half_line && is_dirichlet(bc)) ? proto0.origin.exponent : 0.0;
    const double kappa_origin = proto0.origin.kappa;
    const double tail_kappa = proto0.tail_kappa;
    double extra_depth = proto0.extra_depth;
    BoundaryCondition bc_k = bc;

    Ladder ladder;
    for (int k = 1; k <= K; ++k) {
        ShootingProblem p0{grid,       well0,      v0.domain,  bc_k,
                           {q == 0.0 ? 1.0 : q, kappa_origin}, tail_kappa, extra_depth};
        ShootingProblem pV = p0;
        pV.well.resize(size_t(n));
        for (int i = 0; i < n; ++i) pV.well[size_t(i)] = well0[size_t(i)] + pert[size_t(i)];

        double mu = 0.0, lambda = 0.0;
        GridFunction u, vf;
        try {
            auto [e0, u0] = ground_state(p0);
            auto [ev, v0f] = ground_state(pV);
            mu = -e0;
            lambda = -ev;
            u = std::move(u0);
            vf = std::move(v0f);
        } catch (const NoBoundState&) {
            ladder.completed = false;
            ladder.breakdown_reason =
                "step " + std::to_string(k) + ": operator has no bound state";
            return ladder;
        } catch (const GridTooCoarse& e) {
            ladder.completed = false;
            ladder.breakdown_reason = "step " + std::to_string(k) + ": " + e.what();
            return ladder;
        }

        const double sqrt_mu = std::sqrt(mu);
        const double sqrt_l = std::sqrt(lambda);
        double inset = std::clamp(2.0 / sqrt_mu, 0.5, 0.2 * (grid.x_max - grid.x_min));
        double x_lo = half_line ? (is_dirichlet(bc_k) ? std::max(0.5, r1) : r1)
                                : grid.x_min + inset;
        Window win = window_indices(grid, {x_lo, grid.x_max - inset});
        // On the half line the pole-aware slopes stay accurate down to r1, so
        // lifting and the error-term quadrature use the whole range.
        int lo_log = half_line ? 0 : win.i_lo;

        LogSlopeData du, dv;
        try {
            du = log_slope_data(u, lo_log, win.i_hi, q);
            dv = log_slope_data(vf, lo_log, win.i_hi, q);
        } catch (const NonPositiveGroundState& e) {
            ladder.completed = false;
            ladder.breakdown_reason = "step " + std::to_string(k) + ": " + e.what();
            return ladder;
        }

        std::vector<double> g_full(size_t(n), 0.0), gp_full(size_t(n), 0.0);
        std::vector<double> f_full(size_t(n), 0.0), fp_full(size_t(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double x = grid.point(i);
            double pole = q != 0.0 ? q / x : 0.0;
            double pole_slope = q != 0.0 ? -q / (x * x) : 0.0;
            g_full[size_t(i)] = pole + du.first[size_t(i)];
            gp_full[size_t(i)] = pole_slope + du.second[size_t(i)];
            f_full[size_t(i)] = dv.first[size_t(i)] - du.first[size_t(i)];
            fp_full[size_t(i)] = dv.second[size_t(i)] - du.second[size_t(i)];
        }

        Grid wgrid = subgrid(grid, win);
        auto slice = [&](const std::vector<double>& a) {
            return std::vector<double>(a.begin() + win.i_lo, a.begin() + win.i_hi + 1);
        };
        GridFunction g_win(wgrid, slice(g_full));
        GridFunction f_win(wgrid, slice(f_full));

        double res_g = riccati_residual_g(g_win, GridFunction(wgrid, slice(well0)), mu);
        double res_f =
            riccati_residual_f(f_win, g_win, GridFunction(wgrid, slice(pert)), lambda, mu);
        LogConcavityReport concavity = check_log_concavity(g_win, 0.0);

        // Window-edge values against the decay asymptotes; a kappa/r tail
        // (Coulomb-type) shifts the asymptote algebraically, not just
        // exponentially, so fold the known first-order tail correction in.
        double r_hi = wgrid.x_max;
        double tail_g = tail_kappa != 0.0 ? tail_kappa / (2.0 * sqrt_mu * r_hi) : 0.0;
        double tail_f =
            tail_kappa != 0.0 ? (tail_kappa / (2.0 * r_hi)) * (1.0 / sqrt_l - 1.0 / sqrt_mu) : 0.0;
        double g_hi = g_win[g_win.size() - 1];
        double f_hi = f_win[f_win.size() - 1];
        bool asym = std::abs(g_hi - (-sqrt_mu + tail_g)) <= kAsymptoticTol &&
                    std::abs(f_hi - (-(sqrt_l - sqrt_mu) + tail_f)) <= kAsymptoticTol;
        if (!half_line) {
            asym = asym && std::abs(g_win[0] - sqrt_mu) <= kAsymptoticTol &&
                   std::abs(f_win[0] - (sqrt_l - sqrt_mu)) <= kAsymptoticTol;
        }

        // error term: quadrature of g' f^2 over the resolved range plus
        // closed-form corrections for the unresolved tails, where f is
        // constant to leading order and g' integrates exactly.
        {
            std::vector<double> integrand(size_t(win.i_hi - lo_log + 1));
            for (int i = lo_log; i <= win.i_hi; ++i)
                integrand[size_t(i - lo_log)] =
                    gp_full[size_t(i)] * f_full[size_t(i)] * f_full[size_t(i)];
            double e = integrate(GridFunction(
                Grid(grid.point(lo_log), grid.point(win.i_hi), win.i_hi - lo_log + 1),
                std::move(integrand)));
            e += f_hi * f_hi * (-sqrt_mu - g_full[size_t(win.i_hi)]);
            if (half_line) {
                e += gp_full[0] * f_full[0] * f_full[0] * r1;  // (0, r1): integrand ~ const
            } else {
                double f_lo = f_full[size_t(win.i_lo)];
                e += f_lo * f_lo * (g_full[size_t(win.i_lo)] - sqrt_mu);
            }
            ladder.error_terms.push_back(e);
        }

        std::vector<double> lifted0(size_t(n), 0.0), liftedV(size_t(n), 0.0);
        for (int i = 0; i < n; ++i) {
            lifted0[size_t(i)] = well0[size_t(i)] + 2.0 * gp_full[size_t(i)];
            liftedV[size_t(i)] = pert[size_t(i)] + 2.0 * fp_full[size_t(i)];
        }

        LadderStep step;
        step.index = k;
        step.mu_k = mu;
        step.lambda_k = lambda;
        step.g_k = std::move(g_win);
        step.f_k = std::move(f_win);
        step.lifted_V0 = GridFunction(grid, lifted0);
        step.lifted_V = GridFunction(grid, liftedV);
        step.riccati_residual_g = res_g;
        step.riccati_residual_f = res_f;
        step.g_prime_max = concavity.worst;
        step.asymptotic_ok = asym;
        ladder.steps.push_back(std::move(step));
        ladder.K = k;

        well0 = std::move(lifted0);
        pert = std::move(liftedV);
        if (half_line) {
            // A Dirichlet step raises the recessive exponent by one; a Robin
            // step regularizes the boundary and hands over a Dirichlet
            // problem with u ~ r.
            q = is_dirichlet(bc_k) ? q + 1.0 : 1.0;
            bc_k = Dirichlet{};
            extra_depth = 0.0;
        }
    }
    return ladder;
}

}  // namespace specbound
