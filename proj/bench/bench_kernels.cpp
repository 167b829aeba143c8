// Serial reference vs OpenMP kernel for the two parallel loops.
#include "smf/montecarlo.hpp"
#include "smf/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> beta_grid(int n) {
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = 1.05 + 10.0 * i / (n - 1);
    return b;
}

void BM_Sweep(benchmark::State& state, smf::Exec exec) {
    const auto betas = beta_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto pts = smf::spectrum::sweep(0.5, betas, 3, exec);
        benchmark::DoNotOptimize(pts.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DigitModel(benchmark::State& state, smf::Exec exec) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto est = smf::mc::estimate_mean(2.0, 2, smf::mc::Mode::DigitModel, samples, 1000,
                                          smf::mc::kDefaultSeed, smf::mc::kDefaultOrbitPrecision, exec);
        benchmark::DoNotOptimize(est.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}

void BM_Orbit(benchmark::State& state, smf::Exec exec) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto est = smf::mc::estimate_mean(1.0, 3, smf::mc::Mode::Orbit, samples, 200,
                                          smf::mc::kDefaultSeed, 512, exec);
        benchmark::DoNotOptimize(est.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Sweep, serial, smf::Exec::Serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, smf::Exec::Parallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DigitModel, serial, smf::Exec::Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DigitModel, parallel, smf::Exec::Parallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Orbit, serial, smf::Exec::Serial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Orbit, parallel, smf::Exec::Parallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
