#include "roadsv/dataset.hpp"

#include "roadsv/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace roadsv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    text = trim(text);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

YearMonth YearMonth::parse(std::string_view text) {
    text = trim(text);
    auto parts = split(text, '-');
    YearMonth ym;
    if (parts.size() != 2 || parts[0].size() != 4 || parts[1].empty() || parts[1].size() > 2 ||
        !parse_int(parts[0], ym.year) || !parse_int(parts[1], ym.month) ||
        ym.month < 1 || ym.month > 12) {
        throw ArgumentError("expected YYYY-MM, got '" + std::string(text) + "'");
    }
    return ym;
}

std::string YearMonth::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

MonthRange MonthRange::parse(std::string_view text) {
    auto parts = split(trim(text), ':');
    if (parts.size() != 2) {
        throw ArgumentError("expected YYYY-MM:YYYY-MM, got '" + std::string(text) + "'");
    }
    MonthRange r{YearMonth::parse(parts[0]), YearMonth::parse(parts[1])};
    if (r.last < r.first) throw ArgumentError("range ends before it starts: " + std::string(text));
    return r;
}

RateSeries::RateSeries(std::vector<MonthlyObservation> observations) : obs_(std::move(observations)) {
    for (const auto& o : obs_) {
        if (o.month < 1 || o.month > 12) {
            throw DomainError("month out of range in " + std::to_string(o.year));
        }
        if (o.registered_vehicles <= 0) {
            throw DomainError("registered_vehicles must be positive (" + o.when().to_string() + ")");
        }
        if (o.collisions < 0) {
            throw DomainError("collisions must be non-negative (" + o.when().to_string() + ")");
        }
    }
    std::stable_sort(obs_.begin(), obs_.end(),
                     [](const auto& a, const auto& b) { return a.when() < b.when(); });
    for (std::size_t i = 1; i < obs_.size(); ++i) {
        auto step = obs_[i].when().ordinal() - obs_[i - 1].when().ordinal();
        if (step == 0) throw StructuralError("duplicate month " + obs_[i].when().to_string());
        if (step != 1) {
            throw StructuralError("gap between " + obs_[i - 1].when().to_string() + " and " +
                                  obs_[i].when().to_string());
        }
    }
    rates_.reserve(obs_.size());
    for (const auto& o : obs_) {
        rates_.push_back(static_cast<double>(o.collisions) / static_cast<double>(o.registered_vehicles));
    }
}

YearMonth RateSeries::start() const {
    if (obs_.empty()) throw StructuralError("empty series");
    return obs_.front().when();
}

YearMonth RateSeries::end() const {
    if (obs_.empty()) throw StructuralError("empty series");
    return obs_.back().when();
}

bool RateSeries::covers(const MonthRange& range) const noexcept {
    return !obs_.empty() && start() <= range.first && range.last <= end();
}

double RateSeries::rate_at(YearMonth ym) const {
    if (obs_.empty() || ym < start() || end() < ym) {
        throw ArgumentError(ym.to_string() + " is outside the series");
    }
    return rates_[static_cast<std::size_t>(ym.ordinal() - start().ordinal())];
}

RateSeries RateSeries::slice(const MonthRange& range) const {
    if (!covers(range)) {
        throw StructuralError("series does not cover " + range.first.to_string() + ".." +
                              range.last.to_string());
    }
    auto first = static_cast<std::size_t>(range.first.ordinal() - start().ordinal());
    auto count = static_cast<std::size_t>(range.size());
    return RateSeries({obs_.begin() + static_cast<std::ptrdiff_t>(first),
                       obs_.begin() + static_cast<std::ptrdiff_t>(first + count)});
}

std::vector<int> RateSeries::calendar_months() const {
    std::vector<int> months;
    months.reserve(obs_.size());
    for (const auto& o : obs_) months.push_back(o.month);
    return months;
}

RateSeries RateSeries::concat(const RateSeries& a, const RateSeries& b) {
    auto all = a.obs_;
    all.insert(all.end(), b.obs_.begin(), b.obs_.end());
    return RateSeries(std::move(all));
}

RateSeries load_series(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<MonthlyObservation> rows;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (lineno == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        view = trim(view);
        if (view.empty()) continue;
        auto fields = split(view, ',');
        if (!have_header) {
            if (fields.size() != 4 || trim(fields[0]) != "year" || trim(fields[1]) != "month" ||
                trim(fields[2]) != "collisions" || trim(fields[3]) != "registered_vehicles") {
                throw ParseError("expected header 'year,month,collisions,registered_vehicles'", lineno);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), lineno);
        }
        MonthlyObservation o;
        if (!parse_int(fields[0], o.year)) throw ParseError("bad year", lineno);
        if (!parse_int(fields[1], o.month) || o.month < 1 || o.month > 12) {
            throw ParseError("bad month", lineno);
        }
        if (!parse_int(fields[2], o.collisions)) throw ParseError("bad collisions count", lineno);
        if (!parse_int(fields[3], o.registered_vehicles)) {
            throw ParseError("bad registered_vehicles count", lineno);
        }
        rows.push_back(o);
    }
    if (!have_header) throw ParseError("empty input: missing header", 0);
    return RateSeries(std::move(rows));
}

RateSeries load_series_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    return load_series(in);
}

void write_series(std::ostream& out, const RateSeries& series) {
    out << "year,month,collisions,registered_vehicles\n";
    for (const auto& o : series.observations()) {
        out << o.year << ',' << o.month << ',' << o.collisions << ',' << o.registered_vehicles << '\n';
    }
}

RateSeries bundled_series_2009_2013() {
    std::istringstream in{std::string(bundled_csv_2009_2013())};
    return load_series(in);
}

RateSeries bundled_series_2014_2018() {
    std::istringstream in{std::string(bundled_csv_2014_2018())};
    return load_series(in);
}

// ---------------------------------------------------------------------------

std::vector<double> log_differences(std::span<const double> rates) {
    if (rates.size() < 2) throw ArgumentError("log_differences needs at least two rates");
    std::vector<double> out;
    out.reserve(rates.size() - 1);
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
        if (!(rates[i] > 0.0) || !(rates[i + 1] > 0.0)) {
            throw DomainError("log-difference undefined for a zero rate");
        }
        out.push_back(std::log(rates[i + 1] / rates[i]));
    }
    return out;
}

std::vector<double> log_differences(const RateSeries& series) {
    return log_differences(std::span<const double>(series.rates()));
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) throw ArgumentError("sample standard deviation needs at least two values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0));
}

double annualized_volatility(std::span<const double> logdiffs) {
    return sample_stddev(logdiffs) * std::sqrt(12.0);
}

namespace {

void require_complete_years(const RateSeries& series, std::size_t min_years) {
    if (series.empty() || series.start().month != 1 || series.end().month != 12) {
        throw StructuralError("series must consist of complete calendar years (Jan..Dec)");
    }
    if (series.size() / 12 < min_years) {
        throw StructuralError("need at least " + std::to_string(min_years) + " complete calendar years");
    }
}

} // namespace

std::vector<YearSummary> yearly_summaries(const RateSeries& series) {
    require_complete_years(series, 1);
    const auto& rates = series.rates();
    const auto logdiffs = log_differences(series);
    std::vector<YearSummary> out;
    for (std::size_t first = 0; first < rates.size(); first += 12) {
        YearSummary s;
        s.year = series.observations()[first].year;
        s.mean_rate = std::accumulate(rates.begin() + static_cast<std::ptrdiff_t>(first),
                                      rates.begin() + static_cast<std::ptrdiff_t>(first + 12), 0.0) /
                      12.0;
        // logdiffs[i] is the change into month i+1.
        const std::size_t lo = first == 0 ? 0 : first - 1;
        const std::size_t hi = first + 11; // exclusive
        s.volatility = annualized_volatility(
            std::span<const double>(logdiffs).subspan(lo, hi - lo));
        out.push_back(s);
    }
    return out;
}

double vol_of_vol(const RateSeries& series) {
    require_complete_years(series, 3);
    std::vector<double> vols;
    for (const auto& y : yearly_summaries(series)) vols.push_back(y.volatility);
    return sample_stddev(log_differences(vols));
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ArgumentError("correlation needs two equal-length sequences of at least two values");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw DomainError("correlation undefined for zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double rate_vol_correlation(const RateSeries& series) {
    require_complete_years(series, 3);
    std::vector<double> means, vols;
    for (const auto& y : yearly_summaries(series)) {
        means.push_back(y.mean_rate);
        vols.push_back(y.volatility);
    }
    return pearson_correlation(means, vols);
}

std::vector<double> yearly_deviations(const RateSeries& series) {
    require_complete_years(series, 1);
    const auto& rates = series.rates();
    std::vector<double> out;
    out.reserve(rates.size());
    for (std::size_t first = 0; first < rates.size(); first += 12) {
        double mean = 0.0;
        for (std::size_t i = first; i < first + 12; ++i) mean += rates[i];
        mean /= 12.0;
        for (std::size_t i = first; i < first + 12; ++i) out.push_back(rates[i] / mean - 1.0);
    }
    return out;
}

SeriesStats compute_series_stats(const RateSeries& series) {
    SeriesStats s;
    const auto logdiffs = log_differences(series);
    s.monthly_logdiff_std = sample_stddev(logdiffs);
    s.annualized_volatility = s.monthly_logdiff_std * std::sqrt(12.0);
    s.years = yearly_summaries(series);
    s.vol_of_vol = vol_of_vol(series);
    s.rate_vol_correlation = rate_vol_correlation(series);
    s.mean_rate = std::accumulate(series.rates().begin(), series.rates().end(), 0.0) /
                  static_cast<double>(series.size());
    return s;
}

} // namespace roadsv
