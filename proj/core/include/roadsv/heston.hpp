#pragma once

#include "roadsv/dataset.hpp"
#include "roadsv/rng.hpp"
#include "roadsv/sde.hpp"
#include "roadsv/seasonal.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace roadsv {

/// Extended Heston rate model. Increments are scaled by the start rate c1
/// rather than the running rate:
///   dC = -(mu G_t c1 dt + sqrt(v) c1 dW_c),  dv = CIR(kappa, theta, xi).
struct HestonParams {
    double mu = 0.0; // annual reduction rate
    CirParams cir;
    double rho = 0.0;
    double c1 = 0.0; // start rate

    void validate() const;
};

struct ForecastConfig {
    int horizon_months = 0;
    int n_sims = 5000;
    std::uint64_t master_seed = 42;
    double dt = 1.0 / 12.0;
    std::vector<double> percentile_levels{10.0, 25.0, 50.0, 75.0, 90.0};
    /// Calendar month of the first simulated step (labels only; the seasonal
    /// phase comes from SeasonalConfig::start_month).
    YearMonth start{2019, 1};
    /// Worker threads for ensembles; 0 picks hardware concurrency. Results do
    /// not depend on this value.
    int threads = 0;

    void validate() const;
};

/// One simulated trajectory; index t holds simulated month t+1.
struct SimulationPath {
    std::vector<double> base;        // latent rate before the seasonal overlay
    std::vector<double> adjusted;    // reported rate
    std::vector<double> variances;   // v_t
    std::vector<double> multipliers; // G_t
};

/// Dense [month][path] matrix of reported rates.
class PathMatrix {
public:
    PathMatrix() = default;
    PathMatrix(int horizon_months, int n_paths);

    int horizon() const noexcept { return horizon_; }
    int paths() const noexcept { return paths_; }
    double& at(int month, int path) { return data_[index(month, path)]; }
    double at(int month, int path) const { return data_[index(month, path)]; }
    std::span<const double> month(int m) const;
    std::vector<double> path(int p) const;

private:
    std::size_t index(int month, int path) const {
        return static_cast<std::size_t>(month) * static_cast<std::size_t>(paths_) +
               static_cast<std::size_t>(path);
    }
    int horizon_ = 0;
    int paths_ = 0;
    std::vector<double> data_;
};

/// Per-month percentile table over an ensemble.
struct ForecastEnsemble {
    std::string label;
    ForecastConfig config;
    double start_rate = 0.0;
    std::vector<double> levels;
    std::vector<std::vector<double>> percentiles; // [month][level index]
    std::vector<double> below_start;              // fraction of paths strictly below start_rate

    int horizon() const noexcept { return static_cast<int>(percentiles.size()); }
    /// Value at `level` (must be one of `levels`) for 0-based month index.
    double at(int month, double level) const;
    double median(int month) const { return at(month, 50.0); }
    std::vector<double> median_path() const;
};

/// Linear interpolation between order statistics, (n - 1) * level / 100.
/// `sorted` must be ascending.
double percentile_sorted(std::span<const double> sorted, double level);

SimulationPath simulate_path(const HestonParams& params, const SeasonalConfig& seasonal,
                             const GompertzShockConfig& shock, RngStream& rng,
                             const ForecastConfig& config);

/// Simulates `n_paths` paths with path i drawing from RngStream(master_seed, i).
using PathFunction = std::function<SimulationPath(RngStream&)>;
PathMatrix simulate_paths(const PathFunction& fn, const ForecastConfig& config);

ForecastEnsemble summarize(const PathMatrix& paths, const ForecastConfig& config, double start_rate,
                           std::string label = {});

ForecastEnsemble run_ensemble(const HestonParams& params, const SeasonalConfig& seasonal,
                              const GompertzShockConfig& shock, const ForecastConfig& config,
                              std::string label = {});

/// Fraction of paths whose reported rate at 0-based `month` is strictly below `start_rate`.
double fraction_below_start(const PathMatrix& paths, int month, double start_rate);
double fraction_below_start(const ForecastEnsemble& ensemble, int month);

/// Mean of G_t over every path and month.
double mean_multiplier(const GompertzShockConfig& shock, int horizon_months, int n_paths,
                       std::uint64_t master_seed);

// ---------------------------------------------------------------------------
// Estimation

struct ParameterOverrides {
    std::optional<double> mu;
    std::optional<double> v0;
    std::optional<double> theta;
    std::optional<double> kappa;
    std::optional<double> xi;
    std::optional<double> rho;
    std::optional<double> c1;
    std::optional<double> amplitude;
};

struct EstimatedModel {
    HestonParams params;
    SeasonalConfig seasonal;
    SeriesStats stats;
    SeasonalFit seasonal_fit;
};

/// v0 = annualized volatility^2, theta = v0, xi = vol of vol, rho = rate/vol
/// correlation, kappa = xi^2 / (2 theta) (smallest Feller-compatible value),
/// amplitude from fit_amplitude, mu = 0, c1 = last observed rate; each of these
/// can be overridden. Throws FellerViolation if xi^2 > 2 kappa theta.
EstimatedModel estimate_heston_params(const RateSeries& series, const ParameterOverrides& overrides = {},
                                      std::span<const double> amplitude_grid = {});

/// Smallest kappa with xi^2 <= 2 kappa theta.
double feller_minimum_kappa(double xi, double theta);

// ---------------------------------------------------------------------------
// Long-horizon scenarios

struct ScenarioPreset {
    int id = 0;
    std::string label;
    ParameterOverrides overrides;
    GompertzShockConfig shock;
};

/// Scenarios 1..6: {1,3,5} mu = 0, {2,4,6} mu = 0.0183; {1,2} theta = 0.073
/// without shocks; {3,4} theta = 0.146 and {5,6} theta = 0.0365 with shocks.
/// v0 = 0.073 and c1 = 0.00159 throughout. Throws ArgumentError otherwise.
ScenarioPreset scenario_preset(int id);

/// Applies a preset on top of an estimate: overrides are re-resolved (kappa
/// follows the new theta unless it was overridden explicitly).
EstimatedModel apply_scenario(const RateSeries& series, const ScenarioPreset& preset,
                              const ParameterOverrides& extra = {});

} // namespace roadsv
