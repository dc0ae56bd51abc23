#include <benchmark/benchmark.h>

#include "fraclab/gp_sim.hpp"

using namespace fraclab;

static void BM_SimulateCholesky(benchmark::State& state) {
    const auto kind = ProcessKind::fbm(0.7);
    const auto grid = TimeGrid::regular(1.0, state.range(0));
    for (auto _ : state) {
        auto ps = simulate_cholesky(kind, grid, 1, 64, 1);
        benchmark::DoNotOptimize(ps.values.data());
    }
}
BENCHMARK(BM_SimulateCholesky)->Arg(128)->Arg(512);

static void BM_SimulateCirculant(benchmark::State& state) {
    const auto kind = ProcessKind::fbm(0.7);
    const auto grid = TimeGrid::regular(1.0, state.range(0));
    for (auto _ : state) {
        auto ps = simulate_fgn_circulant(kind, grid, 1, 64, 1);
        benchmark::DoNotOptimize(ps.values.data());
    }
}
BENCHMARK(BM_SimulateCirculant)->Arg(128)->Arg(512)->Arg(4096);
