#include <benchmark/benchmark.h>

#include <cmath>

#include "airylab/evolution.hpp"
#include "airylab/norms.hpp"
#include "airylab/picard.hpp"
#include "airylab/spectral.hpp"
#include "airylab/weighted.hpp"

using namespace airylab;

namespace {

SpaceField gaussian(std::size_t n, double L, double A = 0.05) {
    return sample([A](double x) { return A * std::exp(-x * x); }, make_grid(n, L));
}

void BM_AiryPropagate(benchmark::State& state) {
    const SpaceField f = gaussian(state.range(0), 64.0);
    for (auto _ : state) benchmark::DoNotOptimize(airy_propagate(f, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AiryPropagate)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNLogN);

void BM_Nonlinearity(benchmark::State& state) {
    const SpaceField f = gaussian(state.range(0), 64.0);
    for (auto _ : state) benchmark::DoNotOptimize(nonlinearity(f));
}
BENCHMARK(BM_Nonlinearity)->Arg(1024)->Arg(4096);

void BM_DuhamelMap(benchmark::State& state) {
    const SpaceField u0 = gaussian(1024, 64.0);
    const SpaceTimeField u = airy_orbit(u0, make_time_grid(1.0, state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(duhamel_map(u, u0));
}
BENCHMARK(BM_DuhamelMap)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_YtNorm(benchmark::State& state) {
    const SpaceTimeField u = airy_orbit(gaussian(1024, 64.0), make_time_grid(1.0, 256));
    for (auto _ : state) benchmark::DoNotOptimize(yt_norm(u));
}
BENCHMARK(BM_YtNorm)->Unit(benchmark::kMillisecond);

void BM_OracleStep(benchmark::State& state) {
    const SpaceField u0 = gaussian(state.range(0), 64.0);
    const TimeGrid one_step = make_time_grid(1e-4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_oracle(u0, one_step, {1e-4, true, 1}));
}
BENCHMARK(BM_OracleStep)->Arg(1024)->Arg(4096);

void BM_WeightedProduct(benchmark::State& state) {
    const SpaceField f = gaussian(1024, 128.0);
    for (auto _ : state) benchmark::DoNotOptimize(times_abs_x_power(f, 1.0 / 6.0));
}
BENCHMARK(BM_WeightedProduct);

}  // namespace

BENCHMARK_MAIN();
