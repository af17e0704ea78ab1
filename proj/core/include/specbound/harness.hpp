#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specbound/liebthirring.hpp"

// Randomized corpus generation: sample admissible (V0, V) pairs for each
// inequality's hypothesis class, run the verifier, and aggregate margins.
// Everything is keyed off explicit 64-bit seeds so any case can be replayed.
namespace specbound {

// SplitMix64, pinned by constant: the (seed, draw index) pair identifies a
// value forever, independent of platform and standard-library version.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);  // in [lo, hi)

private:
    std::uint64_t state_;
};

// Whole-line mixture c1*sech^2(a(x-x0)) + c2*exp(-b(x-x0)^2): one shared
// center, so single-well by construction.  c in [0.1,10], a,b in [0.2,5],
// x0 in [-3,3].  Materialized on the reference grid.
PotentialSpec sample_single_well(std::uint64_t seed);

// Half-line well c1*exp(-b r) + c2*sech^2(a r): non-increasing on r > 0.
PotentialSpec sample_half_line_well(std::uint64_t seed);

// Nonnegative perturbation: one or two Gaussian/sech^2 bumps with moderate
// depths, centered inside the well region of the domain.
PotentialSpec sample_perturbation(std::uint64_t seed, SpatialDomain domain);

// Same shape but depths capped well below the quadrature comfort zone of the
// Riesz-mean identity check (|E| stays small).
PotentialSpec sample_shallow_perturbation(std::uint64_t seed, SpatialDomain domain);

// Two separated sech^2 humps (the DoubleWell family).
PotentialSpec sample_double_well(std::uint64_t seed);

// Non-decreasing up to the maximum and non-increasing after it, up to
// rounding slack.
bool is_single_well(const GridFunction& w);

// Ground-state log-concavity of H0 = -d^2/dx^2 - V0: holds iff the windowed
// log-derivative has nonpositive slope.  Double wells are expected to fail.
struct LogConcavityProbe {};
using CorpusTarget = std::variant<InequalityName, LogConcavityProbe>;

std::string target_name(const CorpusTarget& target);

struct CorpusCase {
    int id = 0;
    std::uint64_t seed = 0;
    PotentialSpec v0;
    PotentialSpec v;
    BoundaryCondition bc;
    CorpusTarget target;
};

struct CaseOutcome {
    int id = 0;
    bool skipped = false;      // solver declined the case (reason below)
    std::string skip_reason;
    bool holds = false;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct CorpusSummary {
    int n_cases = 0;
    int n_holds = 0;
    int n_skipped = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    int worst_case_id = -1;
    double runtime_s = 0.0;
    std::vector<CaseOutcome> outcomes;  // ordered by case id
};

// Case `id` of the corpus: the case seed is corpus_seed + id, and all
// parameters derive from that one seed.  The sampled pair satisfies the
// target's hypothesis class by construction.
CorpusCase make_case(int id, std::uint64_t corpus_seed, const CorpusTarget& target);

CaseOutcome run_case(const CorpusCase& c, const Grid& grid);

// Runs n cases on the reference grid of the sampled domain.  Solver failures
// become per-case skip records; the sweep never aborts.  When dump_dir is
// given, every holds=false case is written out as tabulated potentials plus a
// sidecar with the seed and boundary data, for replay.
CorpusSummary run_corpus(int n, const CorpusTarget& target, std::uint64_t seed,
                         const std::optional<std::string>& dump_dir = std::nullopt);

// One row of a one-parameter margin sweep.
struct ScanPoint {
    double parameter = 0.0;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

// Sweeps V = delta * sech^2 with delta from delta_max down to 0 (inclusive,
// `steps` evenly spaced values) against the fixed background v0, reporting
// the shifted-sum bound's margin at gamma = 3/2 for each delta.
std::vector<ScanPoint> margin_scan(const PotentialSpec& v0, double delta_max, int steps,
                                   const Grid& grid);

std::string to_json(const CorpusSummary& summary);

}  // namespace specbound
