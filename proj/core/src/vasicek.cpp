#include "roadsv/vasicek.hpp"

#include "roadsv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roadsv {

void VasicekParams::validate() const {
    if (!(sigma >= 0.0)) throw ArgumentError("vasicek.sigma must be >= 0");
    if (!(c1 > 0.0)) throw ArgumentError("vasicek.c1 must be positive");
    if (!std::isfinite(kappa) || !std::isfinite(theta)) throw ArgumentError("vasicek kappa and theta must be finite");
}

VasicekFit estimate_vasicek(std::span<const double> rates) {
    if (rates.size() < 24) throw ArgumentError("Vasicek estimation needs at least 24 observations");
    VasicekFit fit;
    fit.observations = rates.size();
    auto& p = fit.params;
    p.theta = std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(rates.size());
    p.c1 = rates.back();

    std::vector<double> changes;
    changes.reserve(rates.size() - 1);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
        const double dy = rates[i + 1] - rates[i];
        const double x = p.theta - rates[i];
        changes.push_back(dy);
        sxy += x * dy;
        sxx += x * x;
    }
    p.sigma = sample_stddev(changes) * std::sqrt(12.0);

    const double scale = std::max(std::abs(p.theta), 1e-300);
    if (sxx <= 1e-24 * scale * scale * static_cast<double>(rates.size())) {
        fit.degenerate = true;
        p.kappa = 0.0;
        return fit;
    }
    fit.monthly_slope = sxy / sxx;
    p.kappa = 12.0 * fit.monthly_slope;
    return fit;
}

VasicekFit estimate_vasicek(const RateSeries& series) { return estimate_vasicek(series.rates()); }

SimulationPath simulate_vasicek_path(const VasicekParams& params, const SeasonalConfig& seasonal,
                                     const GompertzShockConfig& shock, RngStream& rng,
                                     const ForecastConfig& config) {
    const auto horizon = static_cast<std::size_t>(config.horizon_months);
    SimulationPath path;
    path.base.reserve(horizon);
    path.adjusted.reserve(horizon);
    path.variances.assign(horizon, params.sigma * params.sigma);
    path.multipliers.reserve(horizon);

    const double dt = config.dt;
    const double sqrt_dt = std::sqrt(dt);
    const double drift = params.kappa * (params.theta - params.c1) * dt;
    SeasonalOverlay overlay(seasonal);
    ShockState shock_state;
    double base = params.c1;

    for (std::size_t t = 1; t <= horizon; ++t) {
        const double z = rng.normal();
        const auto g = shock_step(shock_state, static_cast<int>(t), rng, shock);
        shock_state = g.state;

        base = std::max(base - g.multiplier * drift - params.sigma * sqrt_dt * z, 0.0);

        const int calendar_month = static_cast<int>((seasonal.start_month - 1 + (t - 1)) % 12) + 1;
        path.base.push_back(base);
        path.adjusted.push_back(overlay.apply(base, calendar_month));
        path.multipliers.push_back(g.multiplier);
    }
    return path;
}

ForecastEnsemble run_vasicek_ensemble(const VasicekParams& params, const SeasonalConfig& seasonal,
                                      const GompertzShockConfig& shock, const ForecastConfig& config,
                                      std::string label) {
    params.validate();
    seasonal.validate();
    if (shock.enabled) shock.validate();
    const auto paths = simulate_paths(
        [&](RngStream& rng) { return simulate_vasicek_path(params, seasonal, shock, rng, config); }, config);
    return summarize(paths, config, params.c1, std::move(label));
}

} // namespace roadsv
