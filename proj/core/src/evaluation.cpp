#include "roadsv/evaluation.hpp"

#include "roadsv/errors.hpp"
#include "roadsv/vasicek.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace roadsv {

double ErrorMetrics::mape_value() const {
    if (!mape) throw DomainError("MAPE is undefined when an observed value is zero");
    return *mape;
}

ErrorMetrics error_metrics(std::span<const double> forecast, std::span<const double> observed) {
    if (forecast.size() != observed.size() || forecast.empty()) {
        throw ArgumentError("forecast and observed must be non-empty and of equal length");
    }
    ErrorMetrics m;
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    double pct_sum = 0.0;
    bool pct_ok = true;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        const double err = forecast[i] - observed[i];
        abs_sum += std::abs(err);
        sq_sum += err * err;
        if (observed[i] == 0.0) {
            pct_ok = false;
        } else {
            pct_sum += std::abs(err) / std::abs(observed[i]);
        }
    }
    const auto n = static_cast<double>(forecast.size());
    m.mae = abs_sum / n;
    m.rmse = std::sqrt(sq_sum / n);
    if (pct_ok) m.mape = pct_sum / n;
    return m;
}

std::string_view model_name(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::heston:
        return "heston";
    case ModelKind::vasicek:
        return "vasicek";
    case ModelKind::sarima:
        return "sarima";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
    for (auto kind : {ModelKind::heston, ModelKind::vasicek, ModelKind::sarima}) {
        if (text == model_name(kind)) return kind;
    }
    throw ArgumentError("unknown model `" + std::string(text) + "` (expected heston, vasicek or sarima)");
}

BacktestSpec BacktestSpec::reference(ModelKind model) {
    BacktestSpec spec;
    spec.train = {{2009, 1}, {2013, 12}};
    spec.test = {{2014, 1}, {2018, 12}};
    spec.model = model;
    return spec;
}

namespace {

std::vector<double> forecast_for(const BacktestSpec& spec, const RateSeries& train, double start_rate,
                                 int horizon) {
    ForecastConfig config;
    config.horizon_months = horizon;
    config.n_sims = spec.n_sims;
    config.master_seed = spec.master_seed;
    config.threads = spec.threads;
    config.start = spec.test.first;

    switch (spec.model) {
    case ModelKind::heston: {
        ParameterOverrides ov = spec.overrides;
        if (!ov.c1) ov.c1 = start_rate;
        if (!ov.mu) ov.mu = 0.0;
        auto est = estimate_heston_params(train, ov);
        est.seasonal.start_month = spec.test.first.month;
        return run_ensemble(est.params, est.seasonal, GompertzShockConfig{}, config, "heston").median_path();
    }
    case ModelKind::vasicek: {
        auto fit = estimate_vasicek(train);
        fit.params.c1 = spec.overrides.c1.value_or(start_rate);
        SeasonalConfig seasonal;
        seasonal.amplitude = spec.overrides.amplitude
                                 ? *spec.overrides.amplitude
                                 : fit_amplitude(train, default_amplitude_grid()).amplitude;
        seasonal.start_month = spec.test.first.month;
        return run_vasicek_ensemble(fit.params, seasonal, GompertzShockConfig{}, config, "vasicek").median_path();
    }
    case ModelKind::sarima: {
        const auto model = fit_sarima(train.rates(), spec.sarima_order);
        auto raw = forecast_sarima(model, train.rates(), horizon);
        // Level shift onto the start rate, then re-apply the zero floor.
        const double shift = start_rate - raw.front();
        for (double& v : raw) v = std::max(v + shift, 0.0);
        return raw;
    }
    }
    throw ArgumentError("unknown model kind");
}

} // namespace

ErrorReport backtest(const BacktestSpec& spec, const RateSeries& data) {
    ErrorReport report;
    report.model = std::string(model_name(spec.model));
    report.train = spec.train;
    report.test = spec.test;
    if (spec.train.size() <= 0) throw ArgumentError("train window is empty");
    if (spec.test.size() <= 0) return report;
    if (spec.test.first != spec.train.last.plus_months(1)) {
        throw ArgumentError("test window must start the month after the train window ends");
    }
    if (!data.covers(spec.train) || !data.covers(spec.test)) {
        throw StructuralError("data does not cover " + spec.train.first.to_string() + ".." +
                              spec.test.last.to_string());
    }

    const auto train = data.slice(spec.train);
    const auto test = data.slice(spec.test);
    const auto horizon = static_cast<int>(test.size());
    report.observed = test.rates();
    report.forecast = forecast_for(spec, train, report.observed.front(), horizon);

    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_year;
    for (std::size_t i = 0; i < test.size(); ++i) {
        auto& [f, o] = by_year[test.observations()[i].year];
        f.push_back(report.forecast[i]);
        o.push_back(report.observed[i]);
    }
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0;
    bool mape_ok = true;
    for (const auto& [year, fo] : by_year) {
        const auto m = error_metrics(fo.first, fo.second);
        report.years.push_back({year, m});
        mae += m.mae;
        rmse += m.rmse;
        if (m.mape) {
            mape += *m.mape;
        } else {
            mape_ok = false;
        }
    }
    const auto n = static_cast<double>(report.years.size());
    report.average.mae = mae / n;
    report.average.rmse = rmse / n;
    if (mape_ok) report.average.mape = mape / n;
    return report;
}

ModelComparison compare_models(std::span<const BacktestSpec> specs, const RateSeries& data) {
    if (specs.empty()) throw ArgumentError("no models to compare");
    ModelComparison out;
    for (const auto& spec : specs) {
        ComparisonColumn col;
        col.spec = spec;
        try {
            col.report = backtest(spec, data);
        } catch (const Error& e) {
            col.failure = e.what();
        }
        out.columns.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < out.columns.size(); ++i) {
        const auto& r = out.columns[i].report;
        if (r && r->average.mape) out.ranking.push_back(i);
    }
    std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](std::size_t a, std::size_t b) {
        return *out.columns[a].report->average.mape < *out.columns[b].report->average.mape;
    });
    return out;
}

} // namespace roadsv
