#include "igbm/asian.hpp"
#include "igbm/dothan.hpp"
#include "igbm/oracles.hpp"
#include "igbm/ratefn.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_RateZeroDrift(benchmark::State& state)
{
    double b = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::rate_R(b, 0.0).value);
        b = b < 10.0 ? b * 1.01 : 0.1;
    }
}
BENCHMARK(BM_RateZeroDrift);

void BM_RateHyperbolic(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::rate_R(0.2, 1.5).value);
    }
}
BENCHMARK(BM_RateHyperbolic);

void BM_RateTrigonometric(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::rate_R(1.3, 0.36).value);
    }
}
BENCHMARK(BM_RateTrigonometric);

void BM_BondExact(benchmark::State& state)
{
    const double T = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::bond_exact_zero_drift(0.1, 0.3, T).price);
    }
}
BENCHMARK(BM_BondExact)->Arg(1)->Arg(10)->Arg(100);

void BM_RateIbs(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::rate_ibs(1.7, 0.5).value);
        benchmark::DoNotOptimize(igbm::rate_ibs(0.6, 0.5).value);
    }
}
BENCHMARK(BM_RateIbs);

void BM_AsianApprox(benchmark::State& state)
{
    const igbm::AsianInputs inp{100.0, 110.0, 0.05, 0.0, 0.3, 1.0, igbm::OptionKind::Call};
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::asian_price_approx(inp).price);
    }
}
BENCHMARK(BM_AsianApprox);

void BM_MonteCarloLaplace(benchmark::State& state)
{
    igbm::MCOptions o;
    o.n_paths = 8192;
    o.n_steps = 128;
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::mc_laplace(0.1, 0.3, 0.0, 1.0, o).mean);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(o.n_paths));
}
BENCHMARK(BM_MonteCarloLaplace)->Unit(benchmark::kMillisecond);

void BM_JbShooting(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(igbm::jb_variational(1.0, 0.5).value);
    }
}
BENCHMARK(BM_JbShooting)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
