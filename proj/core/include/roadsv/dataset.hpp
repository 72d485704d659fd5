#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace roadsv {

/// A calendar month. Ordered chronologically.
struct YearMonth {
    int year = 0;
    int month = 1; // 1..12

    /// Months since year 0; consecutive months differ by exactly 1.
    constexpr std::int64_t ordinal() const noexcept {
        return static_cast<std::int64_t>(year) * 12 + (month - 1);
    }
    static constexpr YearMonth from_ordinal(std::int64_t ord) noexcept {
        auto y = ord >= 0 ? ord / 12 : (ord - 11) / 12;
        return {static_cast<int>(y), static_cast<int>(ord - y * 12) + 1};
    }
    constexpr YearMonth plus_months(std::int64_t n) const noexcept {
        return from_ordinal(ordinal() + n);
    }

    constexpr auto operator<=>(const YearMonth&) const = default;

    /// Parses "YYYY-MM". Throws ArgumentError.
    static YearMonth parse(std::string_view text);
    std::string to_string() const;
};

/// Inclusive month range.
struct MonthRange {
    YearMonth first;
    YearMonth last;

    std::int64_t size() const noexcept { return last.ordinal() - first.ordinal() + 1; }
    bool contains(YearMonth ym) const noexcept { return first <= ym && ym <= last; }

    /// Parses "YYYY-MM:YYYY-MM". Throws ArgumentError.
    static MonthRange parse(std::string_view text);
};

struct MonthlyObservation {
    int year = 0;
    int month = 1;
    std::int64_t collisions = 0;
    std::int64_t registered_vehicles = 1;

    YearMonth when() const noexcept { return {year, month}; }
};

/// Gapless, strictly increasing monthly observations with their collision rates.
class RateSeries {
public:
    RateSeries() = default;

    /// Sorts by month and validates. Throws DomainError for a non-positive
    /// vehicle count or negative collisions, StructuralError for gaps and duplicates.
    explicit RateSeries(std::vector<MonthlyObservation> observations);

    const std::vector<MonthlyObservation>& observations() const noexcept { return obs_; }
    const std::vector<double>& rates() const noexcept { return rates_; }
    std::size_t size() const noexcept { return obs_.size(); }
    bool empty() const noexcept { return obs_.empty(); }

    YearMonth start() const;
    YearMonth end() const;
    bool covers(const MonthRange& range) const noexcept;

    /// Rate observed in `ym`. Throws ArgumentError when outside the series.
    double rate_at(YearMonth ym) const;

    /// Sub-series restricted to `range`. Throws StructuralError when not covered.
    RateSeries slice(const MonthRange& range) const;

    /// Calendar month (1..12) of every observation.
    std::vector<int> calendar_months() const;

    /// Series made of every observation of `a` followed by every observation of `b`.
    static RateSeries concat(const RateSeries& a, const RateSeries& b);

private:
    std::vector<MonthlyObservation> obs_;
    std::vector<double> rates_;
};

/// Reads CSV with header `year,month,collisions,registered_vehicles`.
/// Accepts LF or CRLF line endings and a UTF-8 BOM.
RateSeries load_series(std::istream& in);
RateSeries load_series_file(const std::string& path);
void write_series(std::ostream& out, const RateSeries& series);

/// Verbatim copies of data/ireland_2009_2013.csv and data/ireland_2014_2018.csv.
std::string_view bundled_csv_2009_2013();
std::string_view bundled_csv_2014_2018();
RateSeries bundled_series_2009_2013();
RateSeries bundled_series_2014_2018();

// ---------------------------------------------------------------------------
// Statistics

/// ln(rate[i+1]/rate[i]). Throws DomainError on a zero rate.
std::vector<double> log_differences(std::span<const double> rates);
std::vector<double> log_differences(const RateSeries& series);

/// Sample (n-1) standard deviation.
double sample_stddev(std::span<const double> values);

/// Sample standard deviation of monthly log-differences scaled by sqrt(12).
double annualized_volatility(std::span<const double> logdiffs);

struct YearSummary {
    int year = 0;
    double mean_rate = 0.0;
    double volatility = 0.0; // annualized
};

/// One row per complete calendar year. A year's volatility is computed from the
/// log-differences that end in that year, so January's change from the previous
/// December is included whenever that December is part of the series.
/// Throws StructuralError if the series does not consist of complete years.
std::vector<YearSummary> yearly_summaries(const RateSeries& series);

/// Sample standard deviation of the year-over-year log-differences of yearly
/// volatilities. Needs at least three complete years.
double vol_of_vol(const RateSeries& series);

/// Pearson correlation between yearly mean rates and yearly volatilities.
double rate_vol_correlation(const RateSeries& series);

/// rate / (mean rate of its calendar year) - 1, for complete years.
std::vector<double> yearly_deviations(const RateSeries& series);

/// Pearson correlation. Throws DomainError when either input has zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct SeriesStats {
    double monthly_logdiff_std = 0.0;
    double annualized_volatility = 0.0;
    std::vector<YearSummary> years;
    double vol_of_vol = 0.0;
    double rate_vol_correlation = 0.0;
    double mean_rate = 0.0;
};

SeriesStats compute_series_stats(const RateSeries& series);

} // namespace roadsv
