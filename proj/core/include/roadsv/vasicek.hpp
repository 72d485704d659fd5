#pragma once

#include "roadsv/dataset.hpp"
#include "roadsv/heston.hpp"
#include "roadsv/rng.hpp"
#include "roadsv/sde.hpp"
#include "roadsv/seasonal.hpp"

#include <string>

namespace roadsv {

/// Adjusted Vasicek comparator. The path step is
///   base[t] = max(base[t-1] - G_t kappa (theta - c1) dt - sigma sqrt(dt) z, 0).
struct VasicekParams {
    double kappa = 0.0; // per year
    double theta = 0.0; // long-run rate level
    double sigma = 0.0; // absolute volatility per sqrt(year)
    double c1 = 0.0;    // start rate

    void validate() const;
};

struct VasicekFit {
    VasicekParams params;
    /// True when the regression had no variation to explain (kappa reported as 0).
    bool degenerate = false;
    double monthly_slope = 0.0; // least-squares slope of dC on (theta - C)
    std::size_t observations = 0;
};

/// theta = sample mean rate; kappa = 12 * slope of the no-intercept regression
/// of C[i+1] - C[i] on theta - C[i]; sigma = sample stddev of monthly changes
/// times sqrt(12); c1 = last observed rate. Needs at least 24 observations.
VasicekFit estimate_vasicek(std::span<const double> rates);
VasicekFit estimate_vasicek(const RateSeries& series);

/// One normal draw per month, then the shock uniform (and alpha) when eligible.
SimulationPath simulate_vasicek_path(const VasicekParams& params, const SeasonalConfig& seasonal,
                                     const GompertzShockConfig& shock, RngStream& rng,
                                     const ForecastConfig& config);

ForecastEnsemble run_vasicek_ensemble(const VasicekParams& params, const SeasonalConfig& seasonal,
                                      const GompertzShockConfig& shock, const ForecastConfig& config,
                                      std::string label = {});

} // namespace roadsv
