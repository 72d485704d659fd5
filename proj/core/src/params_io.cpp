#include "roadsv/params_io.hpp"

#include "roadsv/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

namespace roadsv {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text.find('%') != std::string_view::npos) {
        throw ArgumentError("`" + std::string(key) + "`: percent strings are not accepted, use a decimal fraction");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
        throw ArgumentError("`" + std::string(key) + "`: expected a number, got `" + std::string(text) + "`");
    }
    return v;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ArgumentError("`" + std::string(key) + "`: expected an integer, got `" + std::string(text) + "`");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ArgumentError("`" + std::string(key) + "`: expected a non-negative integer, got `" +
                            std::string(text) + "`");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ArgumentError("`" + std::string(key) + "`: expected true or false, got `" + std::string(text) + "`");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_double(key, text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    if (out.empty()) throw ArgumentError("`" + std::string(key) + "`: expected a comma-separated list");
    return out;
}

struct Field {
    std::string_view key;
    std::function<void(ModelConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ModelConfig&)> get;
};

#define ROADSV_DOUBLE_FIELD(name, member)                                                                    \
    Field {                                                                                                  \
        name, [](ModelConfig& c, std::string_view k, std::string_view v) { c.member = parse_double(k, v); }, \
            [](const ModelConfig& c) { return format_number(c.member); }                                     \
    }
#define ROADSV_INT_FIELD(name, member)                                                                       \
    Field {                                                                                                  \
        name,                                                                                                \
            [](ModelConfig& c, std::string_view k, std::string_view v) {                                     \
                c.member = static_cast<decltype(c.member)>(parse_int(k, v));                                 \
            },                                                                                               \
            [](const ModelConfig& c) { return std::to_string(c.member); }                                    \
    }
#define ROADSV_BOOL_FIELD(name, member)                                                                    \
    Field {                                                                                                \
        name, [](ModelConfig& c, std::string_view k, std::string_view v) { c.member = parse_bool(k, v); }, \
            [](const ModelConfig& c) { return std::string(c.member ? "true" : "false"); }                  \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table{
        ROADSV_DOUBLE_FIELD("heston.mu", heston.mu),
        ROADSV_DOUBLE_FIELD("heston.v0", heston.cir.v0),
        ROADSV_DOUBLE_FIELD("heston.theta", heston.cir.theta),
        ROADSV_DOUBLE_FIELD("heston.kappa", heston.cir.kappa),
        ROADSV_DOUBLE_FIELD("heston.xi", heston.cir.xi),
        ROADSV_DOUBLE_FIELD("heston.rho", heston.rho),
        ROADSV_DOUBLE_FIELD("heston.c1", heston.c1),
        ROADSV_DOUBLE_FIELD("seasonal.amplitude", seasonal.amplitude),
        ROADSV_DOUBLE_FIELD("seasonal.frequency", seasonal.frequency),
        ROADSV_DOUBLE_FIELD("seasonal.phase", seasonal.phase),
        ROADSV_INT_FIELD("seasonal.start_month", seasonal.start_month),
        ROADSV_BOOL_FIELD("shock.enabled", shock.enabled),
        ROADSV_DOUBLE_FIELD("shock.T", shock.T),
        ROADSV_DOUBLE_FIELD("shock.b", shock.b),
        ROADSV_DOUBLE_FIELD("shock.eta", shock.eta),
        ROADSV_INT_FIELD("shock.duration_months", shock.duration_months),
        ROADSV_INT_FIELD("shock.alpha_low", shock.alpha_low),
        ROADSV_INT_FIELD("shock.alpha_high", shock.alpha_high),
        ROADSV_BOOL_FIELD("shock.suppress_while_active", shock.suppress_while_active),
        ROADSV_INT_FIELD("forecast.horizon_months", forecast.horizon_months),
        ROADSV_INT_FIELD("forecast.n_sims", forecast.n_sims),
        Field{"forecast.master_seed",
              [](ModelConfig& c, std::string_view k, std::string_view v) { c.forecast.master_seed = parse_uint(k, v); },
              [](const ModelConfig& c) { return std::to_string(c.forecast.master_seed); }},
        ROADSV_DOUBLE_FIELD("forecast.dt", forecast.dt),
        Field{"forecast.percentile_levels",
              [](ModelConfig& c, std::string_view k, std::string_view v) {
                  c.forecast.percentile_levels = parse_list(k, v);
              },
              [](const ModelConfig& c) {
                  std::string out;
                  for (double l : c.forecast.percentile_levels) out += (out.empty() ? "" : ",") + format_number(l);
                  return out;
              }},
        Field{"forecast.start",
              [](ModelConfig& c, std::string_view, std::string_view v) { c.forecast.start = YearMonth::parse(trim(v)); },
              [](const ModelConfig& c) { return c.forecast.start.to_string(); }},
        ROADSV_INT_FIELD("forecast.threads", forecast.threads),
    };
    return table;
}

#undef ROADSV_DOUBLE_FIELD
#undef ROADSV_INT_FIELD
#undef ROADSV_BOOL_FIELD

bool is_diagnostic(std::string_view key) {
    return key.starts_with("stats.") || key.starts_with("seasonal_fit.") || key.starts_with("run.");
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

void ModelConfig::validate() const {
    heston.validate();
    seasonal.validate();
    if (shock.enabled) shock.validate();
    forecast.validate();
}

ModelConfig make_model_config(const EstimatedModel& estimate) {
    ModelConfig c;
    c.heston = estimate.params;
    c.seasonal = estimate.seasonal;
    return c;
}

void apply_setting(ModelConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    for (const auto& f : fields()) {
        if (f.key == key) {
            f.set(config, key, value);
            return;
        }
    }
    throw ArgumentError("unknown key `" + std::string(key) + "`");
}

std::pair<std::string, std::string> split_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw ArgumentError("expected key=value, got `" + std::string(text) + "`");
    }
    return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

std::vector<std::pair<std::string, std::string>> config_entries(const ModelConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(std::string(f.key), f.get(config));
    return out;
}

ModelConfig read_params(std::istream& in, ModelConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        if (view.find('=') == std::string_view::npos) throw ParseError("expected `key = value`", line_no);
        auto [key, value] = split_assignment(view);
        if (is_diagnostic(key)) continue;
        try {
            apply_setting(base, key, value);
        } catch (const ArgumentError& e) {
            throw ArgumentError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

ModelConfig read_params_file(const std::string& path, ModelConfig base) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open parameter file `" + path + "`");
    return read_params(in, std::move(base));
}

void write_params(std::ostream& out, const ModelConfig& config, const EstimatedModel* diagnostics) {
    for (const auto& [k, v] : config_entries(config)) out << k << " = " << v << '\n';
    if (!diagnostics) return;
    const auto& s = diagnostics->stats;
    out << "\n# Estimation diagnostics (ignored when read back)\n";
    out << "stats.monthly_logdiff_std = " << format_number(s.monthly_logdiff_std) << '\n';
    out << "stats.annualized_volatility = " << format_number(s.annualized_volatility) << '\n';
    out << "stats.vol_of_vol = " << format_number(s.vol_of_vol) << '\n';
    out << "stats.rate_vol_correlation = " << format_number(s.rate_vol_correlation) << '\n';
    out << "stats.mean_rate = " << format_number(s.mean_rate) << '\n';
    const auto& cir = diagnostics->params.cir;
    out << "stats.feller_margin = " << format_number(2.0 * cir.kappa * cir.theta - cir.xi * cir.xi) << '\n';
    for (const auto& y : s.years) {
        out << "stats.year." << y.year << ".mean_rate = " << format_number(y.mean_rate) << '\n';
        out << "stats.year." << y.year << ".volatility = " << format_number(y.volatility) << '\n';
    }
    out << "seasonal_fit.amplitude = " << format_number(diagnostics->seasonal_fit.amplitude) << '\n';
    for (const auto& [a, err] : diagnostics->seasonal_fit.error_by_amplitude) {
        out << "seasonal_fit.error." << format_number(a) << " = " << format_number(err) << '\n';
    }
}

} // namespace roadsv
