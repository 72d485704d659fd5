#include "roadsv/export.hpp"

#include "roadsv/params_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace roadsv {

std::string format_fixed(double value, int decimals) {
    char buf[128];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::string level_name(double level) { return "p" + format_number(level); }

std::string percent(double fraction, int decimals) { return format_fixed(100.0 * fraction, decimals) + "%"; }

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

} // namespace

void write_ensemble_csv(std::ostream& out, const ForecastEnsemble& ensemble) {
    out << "month_index,year,month";
    for (double level : ensemble.levels) out << ',' << level_name(level);
    out << '\n';
    for (int m = 0; m < ensemble.horizon(); ++m) {
        const auto ym = ensemble.config.start.plus_months(m);
        out << (m + 1) << ',' << ym.year << ',' << ym.month;
        for (double v : ensemble.percentiles[static_cast<std::size_t>(m)]) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_report_csv(std::ostream& out, const ErrorReport& report) {
    out << "year,mae,rmse,mape\n";
    auto row = [&](const std::string& label, const ErrorMetrics& m) {
        out << label << ',' << format_number(m.mae) << ',' << format_number(m.rmse) << ','
            << (m.mape ? format_number(*m.mape) : std::string{}) << '\n';
    };
    for (const auto& y : report.years) row(std::to_string(y.year), y.metrics);
    if (!report.empty()) row("average", report.average);
}

std::string format_report_table(const ErrorReport& report) {
    std::ostringstream os;
    os << report.model << "  train " << report.train.first.to_string() << ".." << report.train.last.to_string()
       << "  test " << report.test.first.to_string() << ".." << report.test.last.to_string() << '\n';
    os << pad("year", 8) << pad("MAE", 10) << pad("RMSE", 10) << pad("MAPE", 9) << '\n';
    auto row = [&](const std::string& label, const ErrorMetrics& m) {
        os << pad(label, 8) << pad(percent(m.mae, 4), 10) << pad(percent(m.rmse, 4), 10)
           << pad(m.mape ? percent(*m.mape, 2) : "n/a", 9) << '\n';
    };
    for (const auto& y : report.years) row(std::to_string(y.year), y.metrics);
    if (!report.empty()) row("average", report.average);
    return os.str();
}

std::string format_comparison_table(const ModelComparison& comparison) {
    std::ostringstream os;
    std::vector<int> years;
    for (const auto& col : comparison.columns) {
        if (!col.report) continue;
        for (const auto& y : col.report->years) years.push_back(y.year);
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());

    os << "MAPE by year\n" << pad("year", 8);
    for (const auto& col : comparison.columns) os << pad(std::string(model_name(col.spec.model)), 10);
    os << '\n';
    auto cell = [&](const ComparisonColumn& col, auto&& pick) -> std::string {
        if (!col.report) return "failed";
        const auto m = pick(*col.report);
        return m && m->mape ? percent(*m->mape, 2) : "n/a";
    };
    for (int year : years) {
        os << pad(std::to_string(year), 8);
        for (const auto& col : comparison.columns) {
            os << pad(cell(col,
                           [&](const ErrorReport& r) -> std::optional<ErrorMetrics> {
                               for (const auto& y : r.years) {
                                   if (y.year == year) return y.metrics;
                               }
                               return std::nullopt;
                           }),
                      10);
        }
        os << '\n';
    }
    os << pad("average", 8);
    for (const auto& col : comparison.columns) {
        os << pad(cell(col, [](const ErrorReport& r) -> std::optional<ErrorMetrics> { return r.average; }), 10);
    }
    os << "\nranking (lowest average MAPE first):";
    for (std::size_t i = 0; i < comparison.ranking.size(); ++i) {
        os << (i ? ", " : " ") << model_name(comparison.columns[comparison.ranking[i]].spec.model);
    }
    os << '\n';
    for (const auto& col : comparison.columns) {
        if (!col.report) os << model_name(col.spec.model) << " failed: " << col.failure << '\n';
    }
    return os.str();
}

void write_fan_chart_svg(std::ostream& out, const ForecastEnsemble& ensemble, std::string_view title) {
    constexpr double width = 900.0;
    constexpr double height = 480.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    const int horizon = ensemble.horizon();

    double ymax = ensemble.start_rate;
    for (const auto& row : ensemble.percentiles) {
        for (double v : row) ymax = std::max(ymax, v);
    }
    ymax = ymax > 0.0 ? ymax * 1.05 : 1.0;

    auto x_of = [&](int m) {
        const double span = std::max(horizon - 1, 1);
        return left + (width - left - right) * static_cast<double>(m) / span;
    };
    auto y_of = [&](double v) { return top + (height - top - bottom) * (1.0 - v / ymax); };
    auto pt = [&](int m, double v) { return format_fixed(x_of(m), 2) + "," + format_fixed(y_of(v), 2); };
    auto find = [&](double level) -> int {
        for (std::size_t i = 0; i < ensemble.levels.size(); ++i) {
            if (std::abs(ensemble.levels[i] - level) < 1e-12) return static_cast<int>(i);
        }
        return -1;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">";
    for (char c : title) {
        switch (c) {
        case '<':
            out << "&lt;";
            break;
        case '>':
            out << "&gt;";
            break;
        case '&':
            out << "&amp;";
            break;
        default:
            out << c;
        }
    }
    out << "</text>\n";

    // Axes and grid.
    out << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\"/>\n</g>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = ymax * i / 5.0;
        const auto y = format_fixed(y_of(v), 2);
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - right << "\" y2=\"" << y
            << "\" stroke=\"#eee\"/>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << y << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
            << percent(v, 3) << "</text>\n";
    }
    if (horizon > 0) {
        const int years = std::max(1, horizon / 12);
        const int every = std::max(1, (years + 7) / 8);
        for (int m = 0; m < horizon; ++m) {
            const auto ym = ensemble.config.start.plus_months(m);
            if (ym.month != 1 && m != 0) continue;
            if (m != 0 && (ym.year - ensemble.config.start.year) % every != 0) continue;
            out << "<text x=\"" << format_fixed(x_of(m), 2) << "\" y=\"" << height - bottom + 18
                << "\" text-anchor=\"middle\">" << ym.year << "</text>\n";
        }
    }

    auto band = [&](int lo, int hi, const char* fill) {
        if (lo < 0 || hi < 0 || horizon == 0) return;
        out << "<polygon fill=\"" << fill << "\" stroke=\"none\" points=\"";
        for (int m = 0; m < horizon; ++m) out << pt(m, ensemble.percentiles[static_cast<std::size_t>(m)][static_cast<std::size_t>(hi)]) << ' ';
        for (int m = horizon; m-- > 0;) out << pt(m, ensemble.percentiles[static_cast<std::size_t>(m)][static_cast<std::size_t>(lo)]) << ' ';
        out << "\"/>\n";
    };
    band(find(10.0), find(90.0), "#c6dbef");
    band(find(25.0), find(75.0), "#6baed6");

    const int med = find(50.0);
    if (med >= 0 && horizon > 0) {
        out << "<polyline fill=\"none\" stroke=\"#08306b\" stroke-width=\"2\" points=\"";
        for (int m = 0; m < horizon; ++m) out << pt(m, ensemble.percentiles[static_cast<std::size_t>(m)][static_cast<std::size_t>(med)]) << ' ';
        out << "\"/>\n";
    }
    const auto start_y = format_fixed(y_of(ensemble.start_rate), 2);
    out << "<line x1=\"" << left << "\" y1=\"" << start_y << "\" x2=\"" << width - right << "\" y2=\"" << start_y
        << "\" stroke=\"#d62728\" stroke-dasharray=\"4 4\"/>\n";
    out << "<text x=\"" << width - right << "\" y=\"" << height - 8
        << "\" text-anchor=\"end\" fill=\"#555\">median (line), 50% and 80% intervals (shaded), start rate (dashed)</text>\n";
    out << "</svg>\n";
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << value;
    return os.str();
}

void write_manifest(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

} // namespace roadsv
