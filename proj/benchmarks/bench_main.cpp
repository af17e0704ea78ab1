#include <benchmark/benchmark.h>

#include <cmath>

#include "specbound/harness.hpp"

using namespace specbound;

namespace {

void bench_integrate(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const GridFunction f = GridFunction::sample(g, [](double x) {
        const double c = std::cosh(x);
        return 6.0 / (c * c);
    });
    for (auto _ : state) benchmark::DoNotOptimize(integrate(f));
}
BENCHMARK(bench_integrate);

void bench_differentiate(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const GridFunction f = GridFunction::sample(g, [](double x) { return std::tanh(x); });
    for (auto _ : state) benchmark::DoNotOptimize(differentiate(f));
}
BENCHMARK(bench_differentiate);

void bench_ground_state(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const ShootingProblem pb =
        make_problem({SpatialDomain::WholeLine, PoschlTeller{2.0}}, DecayAtInfinity{}, g);
    for (auto _ : state) benchmark::DoNotOptimize(ground_state(pb));
}
BENCHMARK(bench_ground_state);

void bench_full_spectrum(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const ShootingProblem pb =
        make_problem({SpatialDomain::WholeLine, PoschlTeller{3.5}}, DecayAtInfinity{}, g);
    for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(pb, 4));
}
BENCHMARK(bench_full_spectrum);

void bench_ladder_step(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const PotentialSpec v0{SpatialDomain::WholeLine, PoschlTeller{2.0}};
    const PotentialSpec v{SpatialDomain::WholeLine,
                          Tabulated{GridFunction::sample(g, [](double x) {
                              const double c = std::cosh(x);
                              return 3.0 / (c * c);
                          })}};
    for (auto _ : state)
        benchmark::DoNotOptimize(build_ladder(v0, v, DecayAtInfinity{}, g, 1));
}
BENCHMARK(bench_ladder_step);

void bench_verify_closed_case(benchmark::State& state) {
    const Grid g = Grid::reference_whole_line();
    const PotentialSpec v0{SpatialDomain::WholeLine, PoschlTeller{1.0}};
    const PotentialSpec v{SpatialDomain::WholeLine,
                          Tabulated{GridFunction::sample(g, [](double x) {
                              const double c = std::cosh(x);
                              return 4.0 / (c * c);
                          })}};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify(Theorem4{}, v0, v, DecayAtInfinity{}, g));
}
BENCHMARK(bench_verify_closed_case);

}  // namespace

BENCHMARK_MAIN();
