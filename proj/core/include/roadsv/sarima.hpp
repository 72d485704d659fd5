#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace roadsv {

/// SARIMA(p, d, q) x (P, D, Q)_m.
struct SarimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    int P = 0;
    int D = 0;
    int Q = 0;
    int m = 12;

    void validate() const;
    /// Observations consumed by differencing: d + D m.
    int differencing_loss() const noexcept { return d + D * m; }
    /// An intercept is estimated only for undifferenced series.
    bool has_intercept() const noexcept { return d + D == 0; }
    /// Free coefficients, intercept included, innovation variance excluded.
    int n_coefficients() const noexcept { return p + q + P + Q + (has_intercept() ? 1 : 0); }
    /// "(p,d,q)x(P,D,Q)m".
    std::string to_string() const;

    auto operator<=>(const SarimaOrder&) const = default;
};

/// Fitted model in the convention
///   (1 - sum ar_i B^i)(1 - sum sar_j B^mj)(w_t - mean) = (1 + sum ma_i B^i)(1 + sum sma_j B^mj) e_t
/// where w is the differenced series and intercept = mean * (1 - sum of expanded AR coefficients).
struct SarimaModel {
    SarimaOrder order;
    std::vector<double> ar;
    std::vector<double> ma;
    std::vector<double> seasonal_ar;
    std::vector<double> seasonal_ma;
    double intercept = 0.0;
    double innovation_variance = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    int n_obs = 0; // length of the differenced series used in the likelihood

    /// Best log-likelihood after each optimizer iteration of the final fit.
    std::vector<double> log_likelihood_trace;
    int iterations = 0;

    /// a_1..a_{p+mP} of the expanded AR polynomial 1 - sum a_k B^k.
    std::vector<double> expanded_ar() const;
    /// b_1..b_{q+mQ} of the expanded MA polynomial 1 + sum b_k B^k.
    std::vector<double> expanded_ma() const;
    /// Mean of the differenced series implied by the intercept.
    double mean() const;
    /// Free parameters counted by AIC (coefficients plus innovation variance).
    int n_parameters() const noexcept { return order.n_coefficients() + 1; }
};

struct SarimaFitOptions {
    int max_iterations = 2000; // per simplex run
    double tolerance = 1e-8;   // on the negative log-likelihood spread
    int max_restarts = 4;
};

/// (1 - B)^d (1 - B^m)^D applied to `series`.
std::vector<double> difference(std::span<const double> series, int d, int D, int m);

/// Exact Gaussian maximum likelihood, started from a conditional-sum-of-squares fit.
/// Coefficients are searched through a partial-autocorrelation transform that keeps
/// every AR polynomial stationary and every MA polynomial invertible.
/// Throws ArgumentError when the series is too short, ConvergenceError when the
/// simplex does not meet its tolerance, ConstraintError when the optimum sits on
/// the stationarity or invertibility boundary.
SarimaModel fit_sarima(std::span<const double> series, const SarimaOrder& order,
                       const SarimaFitOptions& options = {});

/// Ranges searched with d, D and m held fixed.
struct SarimaGrid {
    std::vector<int> p{0, 1, 2};
    std::vector<int> q{0, 1, 2};
    std::vector<int> P{0, 1};
    std::vector<int> Q{0, 1};
    int d = 1;
    int D = 1;
    int m = 12;

    std::vector<SarimaOrder> orders() const;
};

struct SarimaGridCell {
    SarimaOrder order;
    std::optional<double> aic; // empty when the fit failed
    std::string failure;
};

struct SarimaSelection {
    SarimaModel best;
    std::vector<SarimaGridCell> cells; // in SarimaGrid::orders() order
};

/// Fits every cell (in parallel when threads != 1) and keeps the minimum AIC.
/// Ties go to fewer parameters, then to the lexicographically smallest (p, q, P, Q).
/// Throws Error when every cell fails.
SarimaSelection select_sarima_order(std::span<const double> series, const SarimaGrid& grid,
                                    const SarimaFitOptions& options = {}, int threads = 0);

/// Minimum mean-squared-error forecasts with future innovations at zero, given the
/// whole history; differencing is inverted and values are floored at zero.
std::vector<double> forecast_sarima(const SarimaModel& model, std::span<const double> history,
                                    int horizon);

/// Conditional residuals of the differenced history (pre-sample values at the mean,
/// pre-sample innovations at zero). Same length as the differenced series.
std::vector<double> sarima_residuals(const SarimaModel& model, std::span<const double> history);

/// Inverse of sarima_residuals: rebuilds the series from its first
/// `differencing_loss()` values and the residuals.
std::vector<double> sarima_reconstruct(const SarimaModel& model, std::span<const double> initial,
                                       std::span<const double> residuals);

/// Autocovariances gamma(0..max_lag) of the ARMA part for unit innovation variance.
/// Throws DomainError when the AR polynomial is not stationary.
std::vector<double> arma_autocovariance(std::span<const double> ar, std::span<const double> ma,
                                        int max_lag);

/// True when 1 - sum a_k z^k has every root outside the unit circle.
bool is_stationary(std::span<const double> ar);

/// Plain-text `key = value` dump with 17 significant digits.
void write_sarima_model(std::ostream& out, const SarimaModel& model);
/// Throws ParseError.
SarimaModel read_sarima_model(std::istream& in);

} // namespace roadsv
