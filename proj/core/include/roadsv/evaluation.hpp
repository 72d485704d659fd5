#pragma once

#include "roadsv/dataset.hpp"
#include "roadsv/heston.hpp"
#include "roadsv/sarima.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roadsv {

struct ErrorMetrics {
    double mae = 0.0;
    double rmse = 0.0;
    /// Empty when an observed value is zero.
    std::optional<double> mape;

    /// Throws DomainError when MAPE is undefined.
    double mape_value() const;
};

/// MAE = mean|f - o|, RMSE = sqrt(mean (f - o)^2), MAPE = mean(|f - o| / o).
/// Throws ArgumentError on empty or mismatched inputs.
ErrorMetrics error_metrics(std::span<const double> forecast, std::span<const double> observed);

struct ErrorRow {
    int year = 0;
    ErrorMetrics metrics;
};

struct ErrorReport {
    std::string model;
    MonthRange train;
    MonthRange test;
    std::vector<ErrorRow> years;
    /// Mean of the yearly rows.
    ErrorMetrics average;
    std::vector<double> forecast;
    std::vector<double> observed;

    bool empty() const noexcept { return years.empty(); }
};

enum class ModelKind { heston, vasicek, sarima };

std::string_view model_name(ModelKind kind) noexcept;
/// "heston", "vasicek" or "sarima". Throws ArgumentError.
ModelKind parse_model_kind(std::string_view text);

struct BacktestSpec {
    MonthRange train;
    MonthRange test;
    ModelKind model = ModelKind::heston;
    ParameterOverrides overrides;
    SarimaOrder sarima_order{7, 1, 1, 1, 1, 2, 12};
    int n_sims = 5000;
    std::uint64_t master_seed = 42;
    int threads = 0;

    /// Train 2009-01..2013-12, test 2014-01..2018-12.
    static BacktestSpec reference(ModelKind model);
};

/// Fits `spec.model` on the train window and scores its forecast of the test
/// window, year by year. Every model starts from the first test observation:
/// Heston and Vasicek use it as c1 (shocks off, mu = 0, seasonal phase of the
/// first test month); the SARIMA forecast is shifted so its first month equals it.
/// A test window of zero months gives an empty report.
ErrorReport backtest(const BacktestSpec& spec, const RateSeries& data);

struct ComparisonColumn {
    BacktestSpec spec;
    std::optional<ErrorReport> report;
    std::string failure;
};

struct ModelComparison {
    std::vector<ComparisonColumn> columns;
    /// Indices of successful columns, ascending average MAPE.
    std::vector<std::size_t> ranking;
};

/// Runs every backtest; a failing model is recorded in its column without
/// stopping the others. Throws ArgumentError on an empty list.
ModelComparison compare_models(std::span<const BacktestSpec> specs, const RateSeries& data);

} // namespace roadsv
