#include "specbound/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace specbound {

namespace {

// Sub-seeds for the independently sampled pieces of one case.
struct CaseSeeds {
    std::uint64_t background;
    std::uint64_t perturbation;
    SplitMix64 params;  // for scalars drawn directly (nu, kappa, sigma)
};

CaseSeeds split_case_seed(std::uint64_t seed) {
    SplitMix64 r(seed);
    const std::uint64_t a = r.next();
    const std::uint64_t b = r.next();
    return {a, b, SplitMix64(r.next())};
}

PotentialSpec materialize(SpatialDomain domain, const std::function<double(double)>& w) {
    const Grid grid = domain == SpatialDomain::HalfLine ? Grid::reference_half_line()
                                                        : Grid::reference_whole_line();
    return PotentialSpec(domain, Tabulated{GridFunction::sample(grid, w)});
}

nlohmann::json boundary_json(const BoundaryCondition& bc) {
    if (std::holds_alternative<Dirichlet>(bc)) return {{"kind", "dirichlet"}};
    if (const auto s = robin_sigma(bc)) return {{"kind", "robin"}, {"sigma", *s}};
    return {{"kind", "decay"}};
}

void dump_case(const std::string& dir, const CorpusCase& c, const CaseOutcome& out,
               const Grid& grid) {
    std::filesystem::create_directories(dir);
    const std::string stem = dir + "/case_" + std::to_string(c.id);
    save_tabulated(stem + "_v0.dat", sample_on_grid(c.v0, grid));
    save_tabulated(stem + "_v.dat", sample_on_grid(c.v, grid));
    nlohmann::json j{
        {"id", c.id},
        {"seed", c.seed},
        {"target", target_name(c.target)},
        {"bc", boundary_json(c.bc)},
        {"holds", out.holds},
        {"margin", out.margin},
        {"lhs", out.lhs},
        {"rhs", out.rhs},
        {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}}},
    };
    std::ofstream f(stem + ".json");
    f << j.dump(2) << '\n';
}

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
    const double u = double(next() >> 11) * 0x1.0p-53;  // 53-bit fraction in [0,1)
    return lo + (hi - lo) * u;
}

PotentialSpec sample_single_well(std::uint64_t seed) {
    SplitMix64 r(seed);
    const double c1 = r.uniform(0.1, 10.0);
    const double a = r.uniform(0.2, 5.0);
    const double c2 = r.uniform(0.1, 10.0);
    const double b = r.uniform(0.2, 5.0);
    const double x0 = r.uniform(-3.0, 3.0);
    return materialize(SpatialDomain::WholeLine, [=](double x) {
        const double s = 1.0 / std::cosh(a * (x - x0));
        return c1 * s * s + c2 * std::exp(-b * (x - x0) * (x - x0));
    });
}

PotentialSpec sample_half_line_well(std::uint64_t seed) {
    SplitMix64 r(seed);
    const double c1 = r.uniform(0.1, 5.0);
    const double b = r.uniform(0.3, 2.0);
    const double c2 = r.uniform(0.1, 5.0);
    const double a = r.uniform(0.2, 2.0);
    return materialize(SpatialDomain::HalfLine, [=](double x) {
        const double s = 1.0 / std::cosh(a * x);
        return c1 * std::exp(-b * x) + c2 * s * s;
    });
}

namespace {

PotentialSpec sample_bumps(std::uint64_t seed, SpatialDomain domain, double depth_lo,
                           double depth_hi) {
    SplitMix64 r(seed);
    const bool half = domain == SpatialDomain::HalfLine;
    const int n_bumps = 1 + int(r.next() & 1);
    struct Bump {
        bool gaussian;
        double c, w, x0;
    };
    std::vector<Bump> bumps;
    for (int i = 0; i < n_bumps; ++i) {
        Bump b{};
        b.gaussian = (r.next() & 1) != 0;
        b.c = r.uniform(depth_lo, depth_hi);
        b.w = r.uniform(0.3, 3.0);
        b.x0 = half ? r.uniform(0.5, 4.0) : r.uniform(-3.0, 3.0);
        bumps.push_back(b);
    }
    return materialize(domain, [bumps](double x) {
        double v = 0.0;
        for (const Bump& b : bumps) {
            const double t = (x - b.x0) / b.w;
            if (b.gaussian) {
                v += b.c * std::exp(-t * t);
            } else {
                const double s = 1.0 / std::cosh(t);
                v += b.c * s * s;
            }
        }
        return v;
    });
}

}  // namespace

PotentialSpec sample_perturbation(std::uint64_t seed, SpatialDomain domain) {
    return sample_bumps(seed, domain, 0.1, 4.0);
}

PotentialSpec sample_shallow_perturbation(std::uint64_t seed, SpatialDomain domain) {
    return sample_bumps(seed, domain, 0.05, 1.0);
}

PotentialSpec sample_double_well(std::uint64_t seed) {
    SplitMix64 r(seed);
    const double nu = r.uniform(1.2, 2.5);
    const double separation = r.uniform(2.5, 4.0);
    return PotentialSpec(SpatialDomain::WholeLine, DoubleWell{nu, separation});
}

bool is_single_well(const GridFunction& w) {
    const double tol = 1e-12 * std::max(1.0, sup_norm(w));
    int i_max = 0;
    for (int i = 1; i < w.size(); ++i)
        if (w[i] > w[i_max]) i_max = i;
    for (int i = 1; i <= i_max; ++i)
        if (w[i] < w[i - 1] - tol) return false;
    for (int i = i_max + 1; i < w.size(); ++i)
        if (w[i] > w[i - 1] + tol) return false;
    return true;
}

std::string target_name(const CorpusTarget& target) {
    if (std::holds_alternative<LogConcavityProbe>(target)) return "LogConcavity";
    return report_name(std::get<InequalityName>(target));
}

CorpusCase make_case(int id, std::uint64_t corpus_seed, const CorpusTarget& target) {
    CorpusCase c;
    c.id = id;
    c.seed = corpus_seed + std::uint64_t(id);
    c.target = target;
    c.bc = DecayAtInfinity{};

    if (std::holds_alternative<LogConcavityProbe>(target)) {
        c.v0 = sample_double_well(c.seed);
        c.v = PotentialSpec::zero(SpatialDomain::WholeLine);
        return c;
    }

    CaseSeeds seeds = split_case_seed(c.seed);
    const InequalityName& name = std::get<InequalityName>(target);

    if (std::holds_alternative<ClassicalLT>(name) || std::holds_alternative<Schmincke>(name)) {
        c.v0 = PotentialSpec::zero(SpatialDomain::WholeLine);
        c.v = sample_single_well(seeds.perturbation);
    } else if (std::holds_alternative<Theorem1>(name) ||
               std::holds_alternative<Proposition1>(name)) {
        c.v0 = sample_single_well(seeds.background);
        c.v = sample_perturbation(seeds.perturbation, SpatialDomain::WholeLine);
    } else if (std::holds_alternative<Theorem2>(name)) {
        c.v0 = sample_half_line_well(seeds.background);
        c.v = sample_perturbation(seeds.perturbation, SpatialDomain::HalfLine);
        c.bc = Robin{seeds.params.uniform(-2.0, 2.0)};
    } else if (std::holds_alternative<Theorem3>(name)) {
        const double nu = seeds.params.uniform(-0.4, 1.5);
        const double kappa = seeds.params.uniform(0.5, 3.0);
        c.v0 = PotentialSpec(SpatialDomain::HalfLine, Coulomb{nu, kappa});
        c.v = sample_perturbation(seeds.perturbation, SpatialDomain::HalfLine);
        c.bc = Dirichlet{};
    } else if (std::holds_alternative<Theorem4>(name)) {
        const double nu = seeds.params.uniform(0.6, 3.4);
        c.v0 = PotentialSpec(SpatialDomain::WholeLine, PoschlTeller{nu});
        c.v = sample_perturbation(seeds.perturbation, SpatialDomain::WholeLine);
    } else {  // AizenmanLieb: keep |E| small so the identity's quadrature is comfortable
        c.v0 = PotentialSpec::zero(SpatialDomain::WholeLine);
        c.v = sample_shallow_perturbation(seeds.perturbation, SpatialDomain::WholeLine);
    }
    return c;
}

CaseOutcome run_case(const CorpusCase& c, const Grid& grid) {
    CaseOutcome out;
    out.id = c.id;
    try {
        if (std::holds_alternative<LogConcavityProbe>(c.target)) {
            const auto gs = ground_state(make_problem(c.v0, c.bc, grid));
            const double mu = -gs.first;
            const double span = grid.x_max - grid.x_min;
            const double inset = std::clamp(2.0 / std::sqrt(mu), 0.5, 0.2 * span);
            const GridFunction g =
                log_derivative(gs.second, {grid.x_min + inset, grid.x_max - inset});
            const LogConcavityReport rep = check_log_concavity(g, 1e-6);
            out.holds = rep.log_concave;
            out.lhs = rep.worst;  // max slope of the log-derivative
            out.rhs = 0.0;
            out.margin = -rep.worst;
        } else {
            const InequalityReport rep =
                verify(std::get<InequalityName>(c.target), c.v0, c.v, c.bc, grid);
            out.holds = rep.holds;
            out.margin = rep.margin;
            out.lhs = rep.lhs;
            out.rhs = rep.rhs;
        }
    } catch (const NoBoundState& e) {
        out.skipped = true;
        out.skip_reason = e.what();
    } catch (const PreconditionViolated& e) {
        out.skipped = true;
        out.skip_reason = e.what();
    } catch (const GridTooCoarse& e) {
        out.skipped = true;
        out.skip_reason = e.what();
    } catch (const NonPositiveGroundState& e) {
        out.skipped = true;
        out.skip_reason = e.what();
    } catch (const DomainError& e) {
        out.skipped = true;
        out.skip_reason = e.what();
    }
    return out;
}

CorpusSummary run_corpus(int n, const CorpusTarget& target, std::uint64_t seed,
                         const std::optional<std::string>& dump_dir) {
    if (n < 1) throw std::invalid_argument("run_corpus: n must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    CorpusSummary s;
    s.n_cases = n;
    for (int id = 0; id < n; ++id) {
        CorpusCase c = make_case(id, seed, target);
        const Grid grid = c.v0.domain == SpatialDomain::HalfLine ? Grid::reference_half_line()
                                                                 : Grid::reference_whole_line();
        CaseOutcome out = run_case(c, grid);
        if (out.skipped) {
            ++s.n_skipped;
        } else {
            if (out.holds) ++s.n_holds;
            if (out.margin < s.min_margin) {
                s.min_margin = out.margin;
                s.worst_case_id = id;
            }
            if (!out.holds && dump_dir) dump_case(*dump_dir, c, out, grid);
        }
        s.outcomes.push_back(std::move(out));
    }
    s.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

std::vector<ScanPoint> margin_scan(const PotentialSpec& v0, double delta_max, int steps,
                                   const Grid& grid) {
    if (steps < 2) throw std::invalid_argument("margin_scan: steps must be >= 2");
    if (!(delta_max > 0.0))
        throw std::invalid_argument("margin_scan: delta_max must be positive");
    if (v0.domain != SpatialDomain::WholeLine)
        throw std::invalid_argument("margin_scan: whole-line backgrounds only");
    std::vector<ScanPoint> table;
    table.reserve(size_t(steps));
    for (int i = 0; i < steps; ++i) {
        const double delta = delta_max * double(steps - 1 - i) / double(steps - 1);
        // delta * sech^2 is the sech^2 family member with nu(nu+1) = delta.
        const PotentialSpec v =
            delta > 0.0
                ? PotentialSpec(SpatialDomain::WholeLine,
                                PoschlTeller{0.5 * (std::sqrt(1.0 + 4.0 * delta) - 1.0)})
                : PotentialSpec::zero(SpatialDomain::WholeLine);
        const InequalityReport rep = verify(Theorem1{1.5}, v0, v, DecayAtInfinity{}, grid);
        table.push_back({delta, rep.margin, rep.lhs, rep.rhs});
    }
    return table;
}

std::string to_json(const CorpusSummary& summary) {
    using nlohmann::json;
    json cases = json::array();
    for (const CaseOutcome& o : summary.outcomes) {
        json c{{"id", o.id},   {"skipped", o.skipped}, {"holds", o.holds},
               {"margin", o.margin}, {"lhs", o.lhs},   {"rhs", o.rhs}};
        if (o.skipped) c["skip_reason"] = o.skip_reason;
        cases.push_back(c);
    }
    json j{
        {"n_cases", summary.n_cases},
        {"n_holds", summary.n_holds},
        {"n_skipped", summary.n_skipped},
        {"min_margin", summary.min_margin},
        {"worst_case_id", summary.worst_case_id},
        {"runtime_s", summary.runtime_s},
        {"cases", cases},
    };
    return j.dump(2);
}

}  // namespace specbound
