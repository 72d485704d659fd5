#include "roadsv/heston.hpp"

#include "roadsv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace roadsv {

void HestonParams::validate() const {
    cir.validate();
    if (!(c1 > 0.0)) throw ArgumentError("heston.c1 must be positive");
    if (!(std::abs(rho) <= 1.0)) throw ArgumentError("heston.rho must lie in [-1, 1]");
    if (!std::isfinite(mu)) throw ArgumentError("heston.mu must be finite");
}

void ForecastConfig::validate() const {
    if (horizon_months < 0) throw ArgumentError("forecast.horizon_months must be >= 0");
    if (n_sims < 1) throw ArgumentError("forecast.n_sims must be >= 1");
    if (std::abs(dt - 1.0 / 12.0) > 1e-15) throw ArgumentError("forecast.dt is fixed at 1/12");
    if (percentile_levels.empty()) throw ArgumentError("at least one percentile level is required");
    for (double level : percentile_levels) {
        if (!(level > 0.0 && level < 100.0)) throw ArgumentError("percentile levels must lie in (0, 100)");
    }
    if (start.month < 1 || start.month > 12) throw ArgumentError("forecast start month must be 1..12");
    if (threads < 0) throw ArgumentError("threads must be >= 0");
}

PathMatrix::PathMatrix(int horizon_months, int n_paths)
    : horizon_(horizon_months), paths_(n_paths),
      data_(static_cast<std::size_t>(horizon_months) * static_cast<std::size_t>(n_paths), 0.0) {}

std::span<const double> PathMatrix::month(int m) const {
    return std::span<const double>(data_).subspan(index(m, 0), static_cast<std::size_t>(paths_));
}

std::vector<double> PathMatrix::path(int p) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon_));
    for (int m = 0; m < horizon_; ++m) out.push_back(at(m, p));
    return out;
}

double ForecastEnsemble::at(int month, double level) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (std::abs(levels[i] - level) < 1e-12) return percentiles.at(static_cast<std::size_t>(month)).at(i);
    }
    throw ArgumentError("percentile level " + std::to_string(level) + " was not computed");
}

std::vector<double> ForecastEnsemble::median_path() const {
    std::vector<double> out;
    for (int m = 0; m < horizon(); ++m) out.push_back(median(m));
    return out;
}

double percentile_sorted(std::span<const double> sorted, double level) {
    if (sorted.empty()) throw ArgumentError("percentile of an empty sample");
    const double pos = (static_cast<double>(sorted.size()) - 1.0) * level / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

SimulationPath simulate_path(const HestonParams& params, const SeasonalConfig& seasonal,
                             const GompertzShockConfig& shock, RngStream& rng,
                             const ForecastConfig& config) {
    const auto horizon = static_cast<std::size_t>(config.horizon_months);
    SimulationPath path;
    path.base.reserve(horizon);
    path.adjusted.reserve(horizon);
    path.variances.reserve(horizon);
    path.multipliers.reserve(horizon);

    const double dt = config.dt;
    const double sqrt_dt = std::sqrt(dt);
    const double c1 = params.c1;
    SeasonalOverlay overlay(seasonal);
    ShockState shock_state;
    double base = c1;
    double v = params.cir.v0;

    // Per month: z_c, z_perp, then the shock uniform (and alpha) when eligible.
    for (std::size_t t = 1; t <= horizon; ++t) {
        const auto z = correlated_pair(rng, params.rho);
        const auto g = shock_step(shock_state, static_cast<int>(t), rng, shock);
        shock_state = g.state;

        const double vol = std::sqrt(std::max(v, 0.0));
        base = std::max(base - params.mu * g.multiplier * c1 * dt - vol * c1 * sqrt_dt * z.z_c, 0.0);
        v = cir_step(v, dt, params.cir, z.z_v);

        const int calendar_month = static_cast<int>((seasonal.start_month - 1 + (t - 1)) % 12) + 1;
        path.base.push_back(base);
        path.adjusted.push_back(overlay.apply(base, calendar_month));
        path.variances.push_back(v);
        path.multipliers.push_back(g.multiplier);
    }
    return path;
}

PathMatrix simulate_paths(const PathFunction& fn, const ForecastConfig& config) {
    config.validate();
    PathMatrix out(config.horizon_months, config.n_sims);

    auto run_range = [&](int first, int last) {
        for (int p = first; p < last; ++p) {
            RngStream rng(config.master_seed, static_cast<std::uint64_t>(p));
            const auto path = fn(rng);
            for (int m = 0; m < config.horizon_months; ++m) out.at(m, p) = path.adjusted[static_cast<std::size_t>(m)];
        }
    };

    int workers = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, config.n_sims);
    if (workers == 1) {
        run_range(0, config.n_sims);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const int chunk = (config.n_sims + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int first = w * chunk;
            const int last = std::min(config.n_sims, first + chunk);
            if (first >= last) break;
            pool.emplace_back(run_range, first, last);
        }
    }
    return out;
}

ForecastEnsemble summarize(const PathMatrix& paths, const ForecastConfig& config, double start_rate,
                           std::string label) {
    ForecastEnsemble ens;
    ens.label = std::move(label);
    ens.config = config;
    ens.start_rate = start_rate;
    ens.levels = config.percentile_levels;
    std::sort(ens.levels.begin(), ens.levels.end());
    std::vector<double> sorted;
    for (int m = 0; m < paths.horizon(); ++m) {
        auto column = paths.month(m);
        sorted.assign(column.begin(), column.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> row;
        row.reserve(ens.levels.size());
        for (double level : ens.levels) row.push_back(percentile_sorted(sorted, level));
        ens.percentiles.push_back(std::move(row));
        ens.below_start.push_back(fraction_below_start(paths, m, start_rate));
    }
    return ens;
}

ForecastEnsemble run_ensemble(const HestonParams& params, const SeasonalConfig& seasonal,
                              const GompertzShockConfig& shock, const ForecastConfig& config,
                              std::string label) {
    params.validate();
    seasonal.validate();
    if (shock.enabled) shock.validate();
    const auto paths = simulate_paths(
        [&](RngStream& rng) { return simulate_path(params, seasonal, shock, rng, config); }, config);
    return summarize(paths, config, params.c1, std::move(label));
}

double fraction_below_start(const PathMatrix& paths, int month, double start_rate) {
    if (month < 0 || month >= paths.horizon()) throw ArgumentError("month outside the forecast horizon");
    const auto column = paths.month(month);
    const auto below = std::count_if(column.begin(), column.end(), [&](double x) { return x < start_rate; });
    return static_cast<double>(below) / static_cast<double>(column.size());
}

double fraction_below_start(const ForecastEnsemble& ensemble, int month) {
    if (month < 0 || month >= ensemble.horizon()) throw ArgumentError("month outside the forecast horizon");
    return ensemble.below_start[static_cast<std::size_t>(month)];
}

double mean_multiplier(const GompertzShockConfig& shock, int horizon_months, int n_paths,
                       std::uint64_t master_seed) {
    double total = 0.0;
    for (int p = 0; p < n_paths; ++p) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(p));
        ShockState state;
        for (int t = 1; t <= horizon_months; ++t) {
            const auto g = shock_step(state, t, rng, shock);
            state = g.state;
            total += g.multiplier;
        }
    }
    return total / (static_cast<double>(horizon_months) * static_cast<double>(n_paths));
}

// ---------------------------------------------------------------------------

double feller_minimum_kappa(double xi, double theta) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive to derive kappa");
    return xi * xi / (2.0 * theta);
}

EstimatedModel estimate_heston_params(const RateSeries& series, const ParameterOverrides& overrides,
                                      std::span<const double> amplitude_grid) {
    EstimatedModel out;
    out.stats = compute_series_stats(series);
    const auto grid = amplitude_grid.empty() ? default_amplitude_grid()
                                             : std::vector<double>(amplitude_grid.begin(), amplitude_grid.end());
    out.seasonal_fit = fit_amplitude(series, grid);

    auto& p = out.params;
    p.cir.v0 = overrides.v0.value_or(out.stats.annualized_volatility * out.stats.annualized_volatility);
    p.cir.theta = overrides.theta.value_or(p.cir.v0);
    p.cir.xi = overrides.xi.value_or(out.stats.vol_of_vol);
    p.cir.kappa = overrides.kappa ? *overrides.kappa : feller_minimum_kappa(p.cir.xi, p.cir.theta);
    p.rho = overrides.rho.value_or(out.stats.rate_vol_correlation);
    p.mu = overrides.mu.value_or(0.0);
    p.c1 = overrides.c1.value_or(series.rates().back());

    // Equality is what the automatic kappa produces, so only a strict excess is rejected.
    const double lhs = p.cir.xi * p.cir.xi;
    const double rhs = 2.0 * p.cir.kappa * p.cir.theta;
    if (lhs > rhs * (1.0 + 1e-12)) {
        throw FellerViolation("Feller condition violated: xi^2 = " + std::to_string(lhs) +
                              " > 2 kappa theta = " + std::to_string(rhs));
    }
    p.validate();

    out.seasonal.amplitude = overrides.amplitude.value_or(out.seasonal_fit.amplitude);
    out.seasonal.frequency = out.seasonal_fit.frequency;
    out.seasonal.phase = out.seasonal_fit.phase;
    out.seasonal.start_month = series.end().plus_months(1).month;
    return out;
}

ScenarioPreset scenario_preset(int id) {
    if (id < 1 || id > 6) throw ArgumentError("scenario id must be 1..6, got " + std::to_string(id));
    ScenarioPreset s;
    s.id = id;
    const bool reduction = id % 2 == 0;
    s.overrides.mu = reduction ? 0.0183 : 0.0;
    s.overrides.v0 = 0.073;
    s.overrides.c1 = 0.00159;
    switch ((id + 1) / 2) {
    case 1:
        s.overrides.theta = 0.073;
        s.shock = GompertzShockConfig{};
        s.label = reduction ? "Constant variance, reduction target" : "Baseline: constant variance, no target";
        break;
    case 2:
        s.overrides.theta = 0.146;
        s.shock = GompertzShockConfig::standard();
        s.label = reduction ? "Rising variance with shocks, reduction target"
                            : "Rising variance with shocks, no target";
        break;
    default:
        s.overrides.theta = 0.0365;
        s.shock = GompertzShockConfig::standard();
        s.label = reduction ? "Falling variance with shocks, reduction target"
                            : "Falling variance with shocks, no target";
        break;
    }
    return s;
}

EstimatedModel apply_scenario(const RateSeries& series, const ScenarioPreset& preset,
                              const ParameterOverrides& extra) {
    ParameterOverrides merged = preset.overrides;
    auto take = [](std::optional<double>& dst, const std::optional<double>& src) {
        if (src) dst = src;
    };
    take(merged.mu, extra.mu);
    take(merged.v0, extra.v0);
    take(merged.theta, extra.theta);
    take(merged.kappa, extra.kappa);
    take(merged.xi, extra.xi);
    take(merged.rho, extra.rho);
    take(merged.c1, extra.c1);
    take(merged.amplitude, extra.amplitude);
    return estimate_heston_params(series, merged);
}

} // namespace roadsv
