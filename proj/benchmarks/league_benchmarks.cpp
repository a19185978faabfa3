#include <benchmark/benchmark.h>

#include "leaguestat/dataset.hpp"
#include "leaguestat/fitness.hpp"
#include "leaguestat/predict.hpp"
#include "leaguestat/simulate.hpp"
#include "leaguestat/variance.hpp"

namespace {

using namespace leaguestat;

SimulationConfig bench_config(int seasons) {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = seasons;
    config.fitness_sd = 3.0;
    config.home_advantage = 1.87;
    config.seed = 20250101;
    return config;
}

const LeagueDataset& ten_season_league() {
    static const LeagueDataset ds = simulate_league(bench_config(10)).dataset;
    return ds;
}

void BM_SimulateLeague(benchmark::State& state) {
    const auto config = bench_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto league = simulate_league(config);
        benchmark::DoNotOptimize(league.dataset);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 306);
}
BENCHMARK(BM_SimulateLeague)->Arg(1)->Arg(10);

void BM_ParseDataset(benchmark::State& state) {
    const auto text = serialize_dataset(ten_season_league());
    for (auto _ : state) {
        auto ds = parse_dataset(text);
        benchmark::DoNotOptimize(ds);
    }
    state.SetBytesProcessed(state.iterations() * static_cast<long>(text.size()));
}
BENCHMARK(BM_ParseDataset);

void BM_SerializeDataset(benchmark::State& state) {
    const auto& ds = ten_season_league();
    for (auto _ : state) {
        auto text = serialize_dataset(ds);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(BM_SerializeDataset);

void BM_VarianceDecomposition(benchmark::State& state) {
    const auto series = neutralize(ten_season_league());
    for (auto _ : state) {
        auto dec = variance_decomposition(series, VarQuantity::goal_difference, {});
        benchmark::DoNotOptimize(dec);
    }
}
BENCHMARK(BM_VarianceDecomposition);

void BM_MatchdayAutocorrelation(benchmark::State& state) {
    const auto& ds = ten_season_league();
    for (auto _ : state) {
        auto curve = matchday_autocorrelation(ds);
        benchmark::DoNotOptimize(curve);
    }
}
BENCHMARK(BM_MatchdayAutocorrelation);

void BM_FitExponential(benchmark::State& state) {
    const auto curve = matchday_autocorrelation(ten_season_league());
    for (auto _ : state) {
        auto fit = fit_exponential(curve, 14);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(BM_FitExponential);

void BM_EvaluatePredictions(benchmark::State& state) {
    const auto& ds = ten_season_league();
    for (auto _ : state) {
        auto eval = evaluate_predictions(ds, {});
        benchmark::DoNotOptimize(eval);
    }
}
BENCHMARK(BM_EvaluatePredictions);

}  // namespace

BENCHMARK_MAIN();
