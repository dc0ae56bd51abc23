#include <benchmark/benchmark.h>

#include "fraclab/moment.hpp"
#include "fraclab/slnd.hpp"

using namespace fraclab;

static void BM_JKernel(benchmark::State& state) {
    const auto kind = ProcessKind::subfbm(0.6);
    const auto st = two_time_stats(kind, 1.3, 0.6, 0.02);
    JKernelEvaluator ev(JVariant::J, 0.5, state.range(0) ? 0.5 : 0.0, Sign::Plus);
    for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(st).value);
}
BENCHMARK(BM_JKernel)->Arg(0)->Arg(1);

static void BM_SecondMoment1D(benchmark::State& state) {
    const MultiIndex alpha({0.5});
    const double x[1] = {0.0};
    const auto kind = ProcessKind::fbm(0.25);
    for (auto _ : state)
        benchmark::DoNotOptimize(second_moment(alpha, x, 1.0, 0.01, kind, Sign::Plus));
}
BENCHMARK(BM_SecondMoment1D);

static void BM_CondVar(benchmark::State& state) {
    const auto kind = ProcessKind::subfbm(0.7);
    const std::vector<double> s = {0.4, 0.9, 0.99, 1.01, 1.2, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(cond_var(kind, 1.0, s).value);
}
BENCHMARK(BM_CondVar);
