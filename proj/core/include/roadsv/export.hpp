#pragma once

#include "roadsv/evaluation.hpp"
#include "roadsv/heston.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace roadsv {

/// `month_index,year,month,p10,p25,...`, one row per horizon month. Month
/// labels count forward from `ensemble.config.start`.
void write_ensemble_csv(std::ostream& out, const ForecastEnsemble& ensemble);

/// `year,mae,rmse,mape` plus a trailing `average` row. An undefined MAPE is left blank.
void write_report_csv(std::ostream& out, const ErrorReport& report);

/// Aligned plain-text table with rates and MAPE shown in percent.
std::string format_report_table(const ErrorReport& report);

/// Per-year MAPE side by side, an average row and the ranking.
std::string format_comparison_table(const ModelComparison& comparison);

/// Fan chart: median as a solid line, 25-75 and 10-90 bands shaded when those
/// levels are present. Output depends only on the inputs.
void write_fan_chart_svg(std::ostream& out, const ForecastEnsemble& ensemble, std::string_view title);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t value);

/// `key = value` lines, in the order given.
void write_manifest(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& entries);

/// Fixed-point text with `decimals` digits, locale independent.
std::string format_fixed(double value, int decimals);

} // namespace roadsv
