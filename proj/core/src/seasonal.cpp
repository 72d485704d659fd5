#include "roadsv/seasonal.hpp"

#include "roadsv/dataset.hpp"
#include "roadsv/errors.hpp"

#include <cmath>

namespace roadsv {

void SeasonalConfig::validate() const {
    if (!(amplitude >= 0.0)) throw ArgumentError("seasonal.amplitude must be >= 0");
    if (!std::isfinite(frequency) || !std::isfinite(phase)) {
        throw ArgumentError("seasonal frequency and phase must be finite");
    }
    if (start_month < 1 || start_month > 12) throw ArgumentError("seasonal.start_month must be 1..12");
}

double seasonal_factor(int calendar_month, double frequency, double phase) {
    const double t = static_cast<double>(calendar_month - 1) / 12.0;
    return std::sin(2.0 * std::numbers::pi * frequency * t + phase);
}

double SeasonalOverlay::apply(double base, int calendar_month) {
    if (calendar_month == 1) {
        year_sum_ = 0.0;
        year_count_ = 0;
    }
    year_sum_ += base;
    ++year_count_;
    const double year_mean = year_sum_ / year_count_;
    const double adjusted =
        base + year_mean * cfg_.amplitude * seasonal_factor(calendar_month, cfg_.frequency, cfg_.phase);
    return adjusted > 0.0 ? adjusted : 0.0;
}

double SeasonalFit::error_at_fit() const {
    for (const auto& [a, err] : error_by_amplitude) {
        if (a == amplitude) return err;
    }
    throw ArgumentError("fitted amplitude missing from error table");
}

std::vector<double> default_amplitude_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(0.005 * i);
    return grid;
}

SeasonalFit fit_amplitude(std::span<const double> deviations, std::span<const int> calendar_months,
                          std::span<const double> grid) {
    if (grid.empty()) throw ArgumentError("amplitude grid is empty");
    if (deviations.size() != calendar_months.size() || deviations.empty()) {
        throw ArgumentError("deviations and calendar months must be non-empty and aligned");
    }
    SeasonalFit fit;
    std::vector<double> factors;
    factors.reserve(calendar_months.size());
    for (int m : calendar_months) factors.push_back(seasonal_factor(m, fit.frequency, fit.phase));

    double best = 0.0;
    bool first = true;
    for (double a : grid) {
        double err = 0.0;
        for (std::size_t i = 0; i < deviations.size(); ++i) err += std::abs(deviations[i] - a * factors[i]);
        err /= static_cast<double>(deviations.size());
        fit.error_by_amplitude.emplace_back(a, err);
        if (first || err < best || (err == best && a < fit.amplitude)) {
            best = err;
            fit.amplitude = a;
            first = false;
        }
    }
    return fit;
}

SeasonalFit fit_amplitude(const RateSeries& series, std::span<const double> grid) {
    const auto dev = yearly_deviations(series);
    const auto months = series.calendar_months();
    return fit_amplitude(dev, months, grid);
}

} // namespace roadsv
