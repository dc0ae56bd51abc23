#include <benchmark/benchmark.h>

#include "fraclab/heat_kernel.hpp"
#include "fraclab/quad.hpp"

using namespace fraclab;

static void BM_HeatKernelDirect(benchmark::State& state) {
    const double alpha = 0.5;
    double x = 0.0;
    for (auto _ : state) {
        x += 0.01;
        benchmark::DoNotOptimize(frac_heat_kernel_1d(alpha, 0.01, x, Sign::Plus));
    }
}
BENCHMARK(BM_HeatKernelDirect);

static void BM_HeatKernelCached(benchmark::State& state) {
    HeatKernelProfile prof(0.5);
    double x = 0.0;
    for (auto _ : state) {
        x += 0.01;
        benchmark::DoNotOptimize(prof(0.01, x, Sign::Plus));
    }
}
BENCHMARK(BM_HeatKernelCached);

static void BM_HeatKernelCachedInteger(benchmark::State& state) {
    HeatKernelProfile prof(1.0);
    double x = 0.0;
    for (auto _ : state) {
        x += 0.01;
        benchmark::DoNotOptimize(prof(0.01, x, Sign::Plus));
    }
}
BENCHMARK(BM_HeatKernelCachedInteger);

static void BM_GaussPowerPhase(benchmark::State& state) {
    const double w = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::gauss_power_phase(0.5, w));
}
BENCHMARK(BM_GaussPowerPhase)->Arg(1)->Arg(8)->Arg(64);
