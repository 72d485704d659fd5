#pragma once

#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace roadsv {

class RateSeries;

/// Sinusoidal overlay A*sin(2*pi*f*t + phase) with t = (calendar_month - 1)/12.
/// With the default phase the trough falls in April and the peak in October.
struct SeasonalConfig {
    double amplitude = 0.0;
    double frequency = 1.0; // cycles per year
    double phase = std::numbers::pi;
    int start_month = 1; // calendar month of the first simulated step

    void validate() const;
};

/// sin(2*pi*frequency*(calendar_month - 1)/12 + phase).
double seasonal_factor(int calendar_month, double frequency = 1.0,
                       double phase = std::numbers::pi);

/// Applies the seasonal overlay month by month. The scale is the mean of base
/// values seen so far in the current calendar year, including the current month.
class SeasonalOverlay {
public:
    explicit SeasonalOverlay(const SeasonalConfig& cfg) : cfg_(cfg) {}

    /// Reported rate for `base` in `calendar_month`, floored at zero.
    double apply(double base, int calendar_month);

private:
    SeasonalConfig cfg_;
    double year_sum_ = 0.0;
    int year_count_ = 0;
};

struct SeasonalFit {
    double amplitude = 0.0;
    double frequency = 1.0;
    double phase = std::numbers::pi;
    /// (candidate amplitude, mean absolute error), in grid order.
    std::vector<std::pair<double, double>> error_by_amplitude;

    double error_at_fit() const;
};

/// 0% to 15% in 0.5% steps.
std::vector<double> default_amplitude_grid();

/// Mean absolute error between deviations and A*seasonal_factor(month) for each
/// candidate A. Ties resolve toward the smaller amplitude.
SeasonalFit fit_amplitude(std::span<const double> deviations,
                          std::span<const int> calendar_months,
                          std::span<const double> grid);

/// Convenience overload: deviations from yearly means of `series`.
SeasonalFit fit_amplitude(const RateSeries& series, std::span<const double> grid);

} // namespace roadsv
