#include <pilotadapt/codebook.hpp>
#include <pilotadapt/mse_cache.hpp>
#include <pilotadapt/optimizer.hpp>

#include <benchmark/benchmark.h>

using namespace pilotadapt;

namespace {

const GridDims kDims;

void BM_GenerateChannel(benchmark::State& state) {
    const ChannelParams p{550.0, 476.4e-9, static_cast<std::size_t>(state.range(0))};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_channel(p, kDims, ++seed));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(kDims.size()));
}
BENCHMARK(BM_GenerateChannel)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_Interpolate(benchmark::State& state) {
    const PilotConfig cfg{0.5, static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
    const auto ch = generate_channel({550.0, 476.4e-9}, kDims, 1);
    std::vector<PilotSample> ps;
    for (const auto& p : pilot_positions(cfg, kDims)) ps.push_back({p, ch.h(p.sub, p.sym)});
    for (auto _ : state) benchmark::DoNotOptimize(interpolate_2d(ps, kDims));
}
BENCHMARK(BM_Interpolate)->Args({2, 1})->Args({6, 4})->Args({12, 10})->Unit(benchmark::kMillisecond);

void BM_EstimateCorrelations(benchmark::State& state) {
    const auto ch = generate_channel({550.0, 476.4e-9}, kDims, 1);
    const ChannelEstimate est{kDims, ch.h};
    for (auto _ : state) benchmark::DoNotOptimize(estimate_correlations(est, 40, 62));
}
BENCHMARK(BM_EstimateCorrelations)->Unit(benchmark::kMillisecond);

void BM_MseOracle(benchmark::State& state) {
    const MseOracleSettings s;
    const auto chans = oracle_channels(1150.0, 791.2e-9, s.trials, 3, s);
    const PilotConfig cfg{0.5, 6, 4};
    for (auto _ : state) benchmark::DoNotOptimize(empirical_mse(cfg, chans, 100.0, 3));
}
BENCHMARK(BM_MseOracle)->Unit(benchmark::kMillisecond);

void BM_OptimizeWarmCache(benchmark::State& state) {
    const auto cb = build_default_codebook(kDims.t_sym, kDims.delta_f);
    const auto sets = FeasibleSets::defaults();
    const auto st = statistics(cb, {5, 2});
    const auto cond = LinkCondition::from_snr_db(20.0);
    MseCache cache;
    const MseProvider mse = [&](const PilotConfig& c, const ChannelStatistics& s, double snr) { return cache(c, s, snr); };
    optimize(st, cond, sets, kDims, mse);
    for (auto _ : state) benchmark::DoNotOptimize(optimize(st, cond, sets, kDims, mse));
}
BENCHMARK(BM_OptimizeWarmCache)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
