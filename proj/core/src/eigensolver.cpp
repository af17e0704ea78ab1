#include "specbound/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace specbound {
namespace {

constexpr double kHuge = 1e250;
constexpr double kShrink = 1e-250;

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// One sampled problem at one or many trial energies.  The recurrence is the
// standard Numerov scheme for u'' = F u with F = -(E + W):
//   T_i = 1 - h^2 F_i / 12,   u_{i+1} = ((12 - 10 T_i) u_i - T_{i-1} u_{i-1}) / T_{i+1}.
class Shooter {
public:
    explicit Shooter(const ShootingProblem& pb)
        : pb_(pb), n_(pb.grid.n_points), h_(pb.grid.spacing()) {
        if (int(pb.well.size()) != n_)
            throw std::invalid_argument("ShootingProblem: well size does not match grid");
        double w_max = pb.well[0];
        for (double w : pb.well) w_max = std::max(w_max, w);
        floor_ = -(std::max(w_max, 0.0) + pb.extra_depth) - 1.0;
        // Skip the singular centrifugal core where h^2|F|/12 would poison the
        // recurrence; start values there come from the Frobenius form instead.
        i_begin_ = 0;
        if (pb.domain == SpatialDomain::HalfLine && is_dirichlet(pb.bc)) {
            while (i_begin_ < n_ / 8 &&
                   h_ * h_ * (std::abs(pb.well[size_t(i_begin_)]) + std::abs(floor_)) / 12.0 > 0.25)
                ++i_begin_;
        }
        F_.resize(size_t(n_));
        T_.resize(size_t(n_));
    }

    double search_floor() const { return floor_; }
    int left_begin() const { return i_begin_; }

    int count_nodes(double E) {
        set_energy(E);
        auto [u0, u1] = left_start(E);
        int nodes = 0;
        int prev = sign_of(u0);
        if (const int s = sign_of(u1); s != 0 && prev != 0 && s != prev) ++nodes;
        if (sign_of(u1) != 0) prev = sign_of(u1);
        for (int i = i_begin_ + 1; i + 1 < n_; ++i) {
            double next = step_forward(i, u0, u1);
            if (std::abs(next) > kHuge) {
                u1 *= kShrink;
                next *= kShrink;
            }
            u0 = u1;
            u1 = next;
            if (const int s = sign_of(u1); s != 0) {
                if (prev != 0 && s != prev) ++nodes;
                prev = s;
            }
        }
        // Terminal pair decaying faster than the admissible tail solution:
        // the node of the next level sits beyond the grid edge (weak binding,
        // long-range states), so Sturm counting owes one more.
        const auto [v_last, v_prev] = right_start(E);
        const double decay = v_prev / v_last;  // admissible |u_{n-2} / u_{n-1}|
        if (u0 != 0.0 && u1 != 0.0 && sign_of(u0) == sign_of(u1) &&
            std::abs(u1) * decay < std::abs(u0))
            ++nodes;
        return nodes;
    }

    // Scaled Wronskian of the left and right sweeps across the join; zero
    // exactly at a discrete eigenvalue, continuous in E, no poles.
    double mismatch(double E, int i_m) {
        set_energy(E);
        auto [u0, u1] = left_start(E);
        for (int i = i_begin_ + 1; i <= i_m; ++i) {
            double next = step_forward(i, u0, u1);
            if (std::abs(next) > kHuge) {
                u1 *= kShrink;
                next *= kShrink;
            }
            u0 = u1;
            u1 = next;
        }
        const double uL_m = u0, uL_m1 = u1;  // values at i_m, i_m+1

        auto [v1, v0] = right_start(E);  // values at n-1, n-2
        double w1 = v1, w0 = v0;         // rolling pair at (i+1, i)
        for (int i = n_ - 2; i > i_m; --i) {
            double prev = step_backward(i, w0, w1);
            if (std::abs(prev) > kHuge) {
                w0 *= kShrink;
                prev *= kShrink;
            }
            w1 = w0;
            w0 = prev;
        }
        const double uR_m = w0, uR_m1 = w1;

        const double w = uL_m * uR_m1 - uL_m1 * uR_m;
        double denom = (std::abs(uL_m) + std::abs(uL_m1)) * (std::abs(uR_m) + std::abs(uR_m1));
        denom = std::max(denom, 1e-300);
        return w / denom;
    }

    GridFunction eigenfunction(double E, int i_m) {
        set_energy(E);
        std::vector<double> uL(size_t(n_), 0.0);
        fill_frobenius_prefix(E, uL);
        {
            auto [u0, u1] = left_start(E);
            uL[size_t(i_begin_)] = u0;
            uL[size_t(i_begin_ + 1)] = u1;
            for (int i = i_begin_ + 1; i <= i_m; ++i) {
                double next = step_forward(i, uL[size_t(i - 1)], uL[size_t(i)]);
                if (std::abs(next) > kHuge) {
                    for (int j = 0; j <= i; ++j) uL[size_t(j)] *= kShrink;
                    next *= kShrink;
                }
                uL[size_t(i + 1)] = next;
            }
        }
        std::vector<double> uR(size_t(n_), 0.0);
        {
            auto [v1, v0] = right_start(E);
            uR[size_t(n_ - 1)] = v1;
            uR[size_t(n_ - 2)] = v0;
            for (int i = n_ - 2; i > i_m; --i) {
                double prev = step_backward(i, uR[size_t(i)], uR[size_t(i + 1)]);
                if (std::abs(prev) > kHuge) {
                    for (int j = n_ - 1; j >= i; --j) uR[size_t(j)] *= kShrink;
                    prev *= kShrink;
                }
                uR[size_t(i - 1)] = prev;
            }
        }
        if (uL[size_t(i_m)] == 0.0 || uR[size_t(i_m)] == 0.0)
            throw GridTooCoarse("eigenfunction: join lands on a node");
        const double scale = uR[size_t(i_m)] / uL[size_t(i_m)];
        std::vector<double> u(size_t(n_), 0.0);
        for (int i = 0; i <= i_m; ++i) u[size_t(i)] = uL[size_t(i)] * scale;
        for (int i = i_m + 1; i < n_; ++i) u[size_t(i)] = uR[size_t(i)];

        GridFunction gf(pb_.grid, std::move(u));
        GridFunction sq = gf;
        for (double& y : sq.values) y *= y;
        const double norm2 = integrate(sq);
        if (!(norm2 > 0)) throw GridTooCoarse("eigenfunction: vanishing norm");
        const double inv = 1.0 / std::sqrt(norm2);
        int arg = 0;
        for (int i = 1; i < n_; ++i)
            if (std::abs(gf[i]) > std::abs(gf[arg])) arg = i;
        const double s = gf[arg] > 0 ? inv : -inv;
        for (double& y : gf.values) y *= s;
        return gf;
    }

    // Outermost classically allowed point at energy E; the eigenfunction's
    // last extremum sits near it, safely away from interior nodes.
    int turning_index(double E) const {
        int idx = -1;
        for (int i = n_ - 1; i >= i_begin_; --i)
            if (E + pb_.well[size_t(i)] >= 0.0) {
                idx = i;
                break;
            }
        if (idx < 0) {
            idx = i_begin_;
            for (int i = i_begin_; i < n_; ++i)
                if (pb_.well[size_t(i)] > pb_.well[size_t(idx)]) idx = i;
        }
        return std::clamp(idx, i_begin_ + 2, n_ - 4);
    }

    static int certified_nodes(const GridFunction& u) {
        double m = 0.0;
        for (double v : u.values) m = std::max(m, std::abs(v));
        const double tiny = 1e-13 * m;
        int nodes = 0, prev = 0;
        for (double v : u.values) {
            if (std::abs(v) <= tiny) continue;
            const int s = sign_of(v);
            if (prev != 0 && s != prev) ++nodes;
            prev = s;
        }
        return nodes;
    }

private:
    void set_energy(double E) {
        const double c = h_ * h_ / 12.0;
        for (int i = 0; i < n_; ++i) {
            F_[size_t(i)] = -(E + pb_.well[size_t(i)]);
            T_[size_t(i)] = 1.0 - c * F_[size_t(i)];
        }
    }

    double step_forward(int i, double um1, double u) const {
        return ((12.0 - 10.0 * T_[size_t(i)]) * u - T_[size_t(i - 1)] * um1) / T_[size_t(i + 1)];
    }
    double step_backward(int i, double u, double up1) const {
        return ((12.0 - 10.0 * T_[size_t(i)]) * u - T_[size_t(i + 1)] * up1) / T_[size_t(i - 1)];
    }

    std::pair<double, double> left_start(double E) const {
        const double p = std::sqrt(-E);
        if (pb_.domain == SpatialDomain::WholeLine)
            return {1.0, std::exp(p * h_)};
        if (is_dirichlet(pb_.bc)) {
            const double q = pb_.origin.exponent;
            const double kappa = pb_.origin.kappa;
            const double c1 = -kappa / (2.0 * q);
            const double c2 = (kappa * kappa / (2.0 * q) - E) / (4.0 * q + 2.0);
            const double r0 = pb_.grid.point(i_begin_);
            const double r1 = pb_.grid.point(i_begin_ + 1);
            auto series = [&](double r) {
                return std::pow(r, q) * std::max(1.0 + (c1 + c2 * r) * r, 0.2);
            };
            return {series(r0), series(r1)};
        }
        // Robin: Taylor expansion from r = 0 using W extrapolated to the origin.
        const double sigma = *robin_sigma(pb_.bc);
        const double a = pb_.well[0], b = pb_.well[1], c = pb_.well[2];
        const double W0 = 3.0 * a - 3.0 * b + c;
        const double W1 = (-2.5 * a + 4.0 * b - 1.5 * c) / h_;
        const double W2 = (a - 2.0 * b + c) / (h_ * h_);
        const double f0 = -(E + W0), f1 = -W1, f2 = -W2;
        auto taylor = [&](double r) {
            return 1.0 + sigma * r + 0.5 * f0 * r * r + (f1 + f0 * sigma) * r * r * r / 6.0 +
                   (f2 + 2.0 * f1 * sigma + f0 * f0) * r * r * r * r / 24.0;
        };
        return {taylor(pb_.grid.point(0)), taylor(pb_.grid.point(1))};
    }

    std::pair<double, double> right_start(double E) const {
        const double p = std::sqrt(-E);
        double beta = 0.0;
        if (pb_.tail_kappa != 0.0) beta = std::clamp(pb_.tail_kappa / (2.0 * p), -30.0, 30.0);
        const double r_last = pb_.grid.point(n_ - 1);
        const double r_prev = pb_.grid.point(n_ - 2);
        double ratio = std::exp(std::min(p * h_, 600.0));
        if (beta != 0.0 && r_prev > 0) ratio *= std::pow(r_prev / r_last, beta);
        return {1.0, ratio};  // (value at n-1, value at n-2)
    }

    void fill_frobenius_prefix(double /*E*/, std::vector<double>& u) const {
        if (i_begin_ == 0) return;
        const double q = pb_.origin.exponent;
        const double c1 = -pb_.origin.kappa / (2.0 * q);
        for (int i = 0; i < i_begin_; ++i) {
            const double r = pb_.grid.point(i);
            u[size_t(i)] = std::pow(r, q) * std::max(1.0 + c1 * r, 0.2);
        }
    }

    const ShootingProblem& pb_;
    int n_;
    double h_;
    double floor_ = -1.0;
    int i_begin_ = 0;
    std::vector<double> F_, T_;
};

}  // namespace

ShootingProblem make_problem(const PotentialSpec& p, const BoundaryCondition& bc,
                             const Grid& grid) {
    validate_boundary(p.domain, bc);
    ShootingProblem pb;
    pb.grid = grid;
    pb.domain = p.domain;
    pb.bc = bc;
    pb.well = sample_on_grid(p, grid).values;
    if (p.domain == SpatialDomain::HalfLine) {
        if (is_dirichlet(bc)) pb.origin = origin_structure(p);
        if (const auto* c = std::get_if<Coulomb>(&p.family)) pb.tail_kappa = c->kappa;
        if (const auto* t = std::get_if<Tabulated>(&p.family)) {
            const double r_last = grid.point(grid.n_points - 1);
            const double tail = t->table[grid.n_points - 1] * r_last;
            if (std::abs(tail) > 1e-6) pb.tail_kappa = std::clamp(tail, -100.0, 100.0);
        }
        if (const auto s = robin_sigma(bc)) pb.extra_depth = 2.0 * (*s) * (*s) + 1.0;
    }
    return pb;
}

ShootingProblem make_problem(const PotentialSpec& v0, const PotentialSpec& v,
                             const BoundaryCondition& bc, const Grid& grid) {
    if (v0.domain != v.domain)
        throw std::invalid_argument("make_problem: V0 and V live on different domains");
    if (std::holds_alternative<Coulomb>(v.family))
        throw std::invalid_argument("make_problem: the perturbation must be regular");
    ShootingProblem pb = make_problem(v0, bc, grid);
    const GridFunction vv = sample_on_grid(v, grid);
    for (int i = 0; i < grid.n_points; ++i) pb.well[size_t(i)] += vv[i];
    return pb;
}

Spectrum solve_spectrum(const ShootingProblem& problem, int max_levels, double tol) {
    if (max_levels < 1) throw std::invalid_argument("solve_spectrum: max_levels must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("solve_spectrum: tol must be positive");
    validate_boundary(problem.domain, problem.bc);

    Shooter shooter(problem);
    double floor = shooter.search_floor();
    const double ceiling = -std::max(tol, 1e-12);

    std::map<double, int> node_memo;
    auto nodes_at = [&](double E) {
        auto it = node_memo.find(E);
        if (it != node_memo.end()) return it->second;
        const int c = shooter.count_nodes(E);
        node_memo.emplace(E, c);
        return c;
    };

    for (int guard = 0; nodes_at(floor) > 0 && guard < 8; ++guard) floor = 2.0 * floor - 1.0;
    if (nodes_at(floor) > 0) throw GridTooCoarse("solve_spectrum: cannot find a node-free floor");

    const int total = nodes_at(ceiling);
    const int m = std::min(max_levels, total);
    if (m == 0) throw NoBoundState("solve_spectrum: no negative eigenvalue on this grid");

    // Locate the energies where the left-sweep node count jumps k-1 -> k.
    // One extra jump past the requested count bounds the last scan window, so
    // a truncated spectrum never scans across the next (unrequested) level.
    const int n_jumps = total > m ? m + 1 : m;
    std::vector<double> jumps(size_t(m) + 1, ceiling);
    for (int k = 1; k <= n_jumps; ++k) {
        double lo = floor, hi = ceiling;
        for (auto& [e, c] : node_memo) {
            if (c <= k - 1) lo = std::max(lo, e);
            if (c >= k && e < hi) hi = std::min(hi, e);
        }
        while (hi - lo > std::max(1e-10, 1e-10 * std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (nodes_at(mid) <= k - 1 ? lo : hi) = mid;
        }
        jumps[size_t(k - 1)] = 0.5 * (lo + hi);
    }

    Spectrum out;
    out.grid = problem.grid;
    out.count_requested = max_levels;

    for (int k = 1; k <= m; ++k) {
        const double j = jumps[size_t(k - 1)];
        const double gap_lo = j - (k >= 2 ? jumps[size_t(k - 2)] : floor);
        const double gap_hi = jumps[size_t(k)] - j;
        const double lo = j - 0.45 * gap_lo;
        const double hi = j + 0.45 * gap_hi;
        const int i_m = shooter.turning_index(j);
        auto w = [&](double E) { return shooter.mismatch(E, i_m); };

        double a = lo, b = hi;
        bool bracketed = false;
        for (int pts : {49, 385}) {
            double prev_e = lo, prev_w = w(lo);
            double best_width = 1e300;
            for (int i = 1; i < pts; ++i) {
                const double e = lo + (hi - lo) * double(i) / double(pts - 1);
                const double we = w(e);
                if (prev_w == 0.0 || (we > 0) != (prev_w > 0)) {
                    // keep the sign change nearest the node-count jump
                    const double dist = std::abs(0.5 * (prev_e + e) - j);
                    if (dist < best_width) {
                        best_width = dist;
                        a = prev_e;
                        b = e;
                        bracketed = true;
                    }
                }
                prev_e = e;
                prev_w = we;
            }
            if (bracketed) break;
        }
        // Tunneling doublets sit closer together than a scan panel; the jump
        // energy localizes the root to ~1e-10, so shrink the window onto it.
        for (double r = std::max(1e-6 * std::abs(j), 1e-9);
             !bracketed && r > 1e-13 * std::abs(j); r *= 1e-2) {
            const double flo = std::max(lo, j - r);
            const double fhi = std::min(hi, j + r);
            double prev_e = flo, prev_w = w(flo);
            for (int i = 1; i < 33; ++i) {
                const double e = flo + (fhi - flo) * double(i) / 32.0;
                const double we = w(e);
                if (prev_w == 0.0 || (we > 0) != (prev_w > 0)) {
                    a = prev_e;
                    b = e;
                    bracketed = true;
                    break;
                }
                prev_e = e;
                prev_w = we;
            }
        }
        if (!bracketed) {
            if (std::getenv("SPECBOUND_DEBUG_SCAN")) {
                std::fprintf(stderr, "scan k=%d j=%.12f lo=%.12f hi=%.12f i_m=%d\n", k, j, lo, hi, i_m);
                for (int i = 0; i < 9; ++i) {
                    const double e = lo + (hi - lo) * i / 8.0;
                    std::fprintf(stderr, "  w(%.12f) = %.6e  nodes=%d\n", e, w(e), nodes_at(e));
                }
            }
            throw GridTooCoarse("solve_spectrum: matching mismatch has no sign change near level " +
                                std::to_string(k));
        }

        double E = bisect_root(w, a, b, std::max(tol, 1e-14 * std::abs(a)));
        GridFunction u = shooter.eigenfunction(E, i_m);
        if (Shooter::certified_nodes(u) != k - 1)
            throw GridTooCoarse("solve_spectrum: node certification failed for level " +
                                std::to_string(k));
        out.eigenvalues.push_back(E);
        out.eigenfunctions.push_back(std::move(u));
    }
    out.count_found = int(out.eigenvalues.size());
    return out;
}

Spectrum solve_spectrum(const PotentialSpec& p, const BoundaryCondition& bc, const Grid& grid,
                        int max_levels, double tol) {
    return solve_spectrum(make_problem(p, bc, grid), max_levels, tol);
}

std::pair<double, GridFunction> ground_state(const ShootingProblem& problem, double tol) {
    Spectrum s = solve_spectrum(problem, 1, tol);
    return {s.eigenvalues.front(), std::move(s.eigenfunctions.front())};
}

std::pair<double, GridFunction> ground_state(const PotentialSpec& p, const BoundaryCondition& bc,
                                             const Grid& grid, double tol) {
    return ground_state(make_problem(p, bc, grid), tol);
}

}  // namespace specbound
