#include "roadsv/dataset.hpp"
#include "roadsv/heston.hpp"
#include "roadsv/sarima.hpp"

#include <benchmark/benchmark.h>

using namespace roadsv;

namespace {

void BM_ScenarioEnsemble(benchmark::State& state) {
    const auto preset = scenario_preset(6);
    const auto est = apply_scenario(bundled_series_2014_2018(), preset);
    ForecastConfig cfg;
    cfg.horizon_months = 312;
    cfg.n_sims = static_cast<int>(state.range(0));
    cfg.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto e = run_ensemble(est.params, est.seasonal, preset.shock, cfg);
        benchmark::DoNotOptimize(e.percentiles.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_sims * cfg.horizon_months);
}
BENCHMARK(BM_ScenarioEnsemble)->Args({1000, 1})->Args({5000, 1})->Args({5000, 0})->Unit(benchmark::kMillisecond);

void BM_SimulatePath(benchmark::State& state) {
    const auto est = apply_scenario(bundled_series_2014_2018(), scenario_preset(4));
    ForecastConfig cfg;
    cfg.horizon_months = 312;
    std::uint64_t id = 0;
    for (auto _ : state) {
        RngStream rng(42, id++);
        auto p = simulate_path(est.params, est.seasonal, GompertzShockConfig::standard(), rng, cfg);
        benchmark::DoNotOptimize(p.adjusted.data());
    }
}
BENCHMARK(BM_SimulatePath);

void BM_FitSarima(benchmark::State& state) {
    const auto r = bundled_series_2009_2013().rates();
    const SarimaOrder order{static_cast<int>(state.range(0)), 1, 1, 1, 1, static_cast<int>(state.range(1)), 12};
    for (auto _ : state) {
        auto m = fit_sarima(r, order);
        benchmark::DoNotOptimize(m.log_likelihood);
    }
    state.SetLabel(order.to_string());
}
BENCHMARK(BM_FitSarima)->Args({1, 1})->Args({7, 2})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
