#include "cli.hpp"

#include "roadsv/errors.hpp"
#include "roadsv/evaluation.hpp"
#include "roadsv/export.hpp"
#include "roadsv/heston.hpp"
#include "roadsv/params_io.hpp"
#include "roadsv/rng.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace roadsv::cli {

namespace {

namespace fs = std::filesystem;

using Entries = std::vector<std::pair<std::string, std::string>>;

constexpr std::string_view kBundledPrefix = "bundled:";

struct InputData {
    RateSeries series;
    Entries sources; // manifest lines
};

InputData load_inputs(const std::vector<std::string>& specs, const std::vector<std::string>& defaults) {
    const auto& list = specs.empty() ? defaults : specs;
    InputData data;
    std::optional<RateSeries> merged;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& spec = list[i];
        std::string text;
        if (spec.starts_with(kBundledPrefix)) {
            const auto name = std::string_view(spec).substr(kBundledPrefix.size());
            if (name == "2009-2013") {
                text = bundled_csv_2009_2013();
            } else if (name == "2014-2018") {
                text = bundled_csv_2014_2018();
            } else {
                throw ArgumentError("unknown bundled dataset `" + spec +
                                    "` (expected bundled:2009-2013 or bundled:2014-2018)");
            }
        } else {
            std::ifstream in(spec, std::ios::binary);
            if (!in) throw ArgumentError("cannot open input `" + spec + "`");
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        std::istringstream in(text);
        RateSeries part;
        try {
            part = load_series(in);
        } catch (const ParseError& e) {
            throw ParseError(spec + ": " + e.what(), 0);
        }
        merged = merged ? RateSeries::concat(*merged, part) : part;
        const auto key = "run.input." + std::to_string(i + 1);
        data.sources.emplace_back(key, spec);
        data.sources.emplace_back(key + ".fnv1a64", hex64(fnv1a64(text)));
    }
    data.series = std::move(*merged);
    return data;
}

// --set keys that feed estimation; everything else goes straight onto the config.
std::optional<std::optional<double> ParameterOverrides::*> estimation_slot(std::string_view key) {
    if (key == "heston.mu") return &ParameterOverrides::mu;
    if (key == "heston.v0") return &ParameterOverrides::v0;
    if (key == "heston.theta") return &ParameterOverrides::theta;
    if (key == "heston.kappa") return &ParameterOverrides::kappa;
    if (key == "heston.xi") return &ParameterOverrides::xi;
    if (key == "heston.rho") return &ParameterOverrides::rho;
    if (key == "heston.c1") return &ParameterOverrides::c1;
    if (key == "seasonal.amplitude") return &ParameterOverrides::amplitude;
    return std::nullopt;
}

struct Settings {
    ParameterOverrides overrides;
    Entries rest;
};

Settings split_settings(const std::vector<std::string>& sets) {
    Settings s;
    for (const auto& text : sets) {
        auto [key, value] = split_assignment(text);
        ModelConfig scratch;
        apply_setting(scratch, key, value); // validates key and value
        if (const auto slot = estimation_slot(key)) {
            ParameterOverrides parsed;
            parsed.mu = scratch.heston.mu;
            parsed.v0 = scratch.heston.cir.v0;
            parsed.theta = scratch.heston.cir.theta;
            parsed.kappa = scratch.heston.cir.kappa;
            parsed.xi = scratch.heston.cir.xi;
            parsed.rho = scratch.heston.rho;
            parsed.c1 = scratch.heston.c1;
            parsed.amplitude = scratch.seasonal.amplitude;
            s.overrides.*(*slot) = parsed.*(*slot);
        } else {
            s.rest.emplace_back(std::move(key), std::move(value));
        }
    }
    return s;
}

void apply_overrides(ModelConfig& config, const ParameterOverrides& ov) {
    if (ov.mu) config.heston.mu = *ov.mu;
    if (ov.v0) config.heston.cir.v0 = *ov.v0;
    if (ov.theta) config.heston.cir.theta = *ov.theta;
    if (ov.kappa) config.heston.cir.kappa = *ov.kappa;
    if (ov.xi) config.heston.cir.xi = *ov.xi;
    if (ov.rho) config.heston.rho = *ov.rho;
    if (ov.c1) config.heston.c1 = *ov.c1;
    if (ov.amplitude) config.seasonal.amplitude = *ov.amplitude;
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw ArgumentError("cannot create output directory `" + dir + "`: " + ec.message());
    return p;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write `" + path.string() + "`");
    fn(out);
}

Entries run_header(const std::string& command) {
    return {{"run.tool", std::string("roadsv ") + ROADSV_VERSION},
            {"run.command", command},
            {"run.rng", std::string(kRngAlgorithm)}};
}

std::string pct(double fraction, int decimals = 2) { return format_fixed(100.0 * fraction, decimals) + "%"; }

// ---------------------------------------------------------------------------

struct EstimateOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> sets;
    std::string out = "out";
};

int cmd_estimate(const EstimateOptions& o, std::ostream& out) {
    const auto data = load_inputs(o.inputs, {"bundled:2014-2018"});
    const auto settings = split_settings(o.sets);
    const auto est = estimate_heston_params(data.series, settings.overrides);
    auto config = make_model_config(est);
    config.forecast.start = data.series.end().plus_months(1);
    config.forecast.horizon_months = 312;
    for (const auto& [k, v] : settings.rest) apply_setting(config, k, v);
    config.validate();

    const auto dir = prepare_out(o.out);
    write_file(dir / "params.txt", [&](std::ostream& f) { write_params(f, config, &est); });
    auto manifest = run_header("estimate");
    manifest.insert(manifest.end(), data.sources.begin(), data.sources.end());
    manifest.emplace_back("run.output.1", "params.txt");
    const auto entries = config_entries(config);
    manifest.insert(manifest.end(), entries.begin(), entries.end());
    write_file(dir / "manifest.txt", [&](std::ostream& f) { write_manifest(f, manifest); });

    const auto& s = est.stats;
    out << "series " << data.series.start().to_string() << ".." << data.series.end().to_string() << " ("
        << data.series.size() << " months)\n";
    out << "monthly log-diff std    " << pct(s.monthly_logdiff_std) << '\n';
    out << "annualized volatility   " << pct(s.annualized_volatility) << '\n';
    for (const auto& y : s.years) {
        out << "  " << y.year << "  mean rate " << pct(y.mean_rate, 4) << "  volatility " << pct(y.volatility)
            << '\n';
    }
    out << "vol of vol (xi)         " << pct(s.vol_of_vol) << '\n';
    out << "rate/vol correlation    " << format_fixed(s.rate_vol_correlation, 4) << '\n';
    out << "v0                      " << format_fixed(est.params.cir.v0, 6) << '\n';
    out << "theta                   " << format_fixed(est.params.cir.theta, 6) << '\n';
    out << "kappa (Feller minimum)  " << format_fixed(est.params.cir.kappa, 6) << '\n';
    out << "seasonal amplitude      " << pct(est.seasonal.amplitude, 1) << "  (MAE "
        << pct(est.seasonal_fit.error_at_fit(), 3) << ")\n";
    out << "start rate c1           " << pct(est.params.c1, 4) << '\n';
    out << "wrote " << (dir / "params.txt").string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

struct ForecastOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> sets;
    std::string params;
    std::optional<int> scenario;
    std::optional<int> months;
    std::optional<int> sims;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool plot = false;
    std::string out = "out";
};

int cmd_forecast(const ForecastOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
    const auto settings = split_settings(o.sets);
    ModelConfig config;
    std::string label;
    auto manifest = run_header(command);

    if (o.scenario) {
        if (!o.params.empty()) throw ArgumentError("--scenario and --params are mutually exclusive");
        const auto data = load_inputs(o.inputs, {"bundled:2014-2018"});
        const auto preset = scenario_preset(*o.scenario);
        const auto est = apply_scenario(data.series, preset, settings.overrides);
        config = make_model_config(est);
        config.shock = preset.shock;
        config.forecast.start = data.series.end().plus_months(1);
        config.seasonal.start_month = config.forecast.start.month;
        config.forecast.horizon_months = 312;
        label = "Scenario " + std::to_string(preset.id) + ": " + preset.label;
        manifest.emplace_back("run.scenario", std::to_string(preset.id));
        manifest.insert(manifest.end(), data.sources.begin(), data.sources.end());
    } else if (!o.params.empty()) {
        std::ifstream in(o.params, std::ios::binary);
        if (!in) throw ArgumentError("cannot open parameter file `" + o.params + "`");
        std::ostringstream text;
        text << in.rdbuf();
        std::istringstream parse(text.str());
        config = read_params(parse);
        apply_overrides(config, settings.overrides);
        label = "Forecast from " + fs::path(o.params).filename().string();
        manifest.emplace_back("run.params", o.params);
        manifest.emplace_back("run.params.fnv1a64", hex64(fnv1a64(text.str())));
    } else {
        throw ArgumentError(command + " needs --params FILE or --scenario N");
    }

    for (const auto& [k, v] : settings.rest) apply_setting(config, k, v);
    if (o.months) config.forecast.horizon_months = *o.months;
    if (o.sims) config.forecast.n_sims = *o.sims;
    if (o.seed) config.forecast.master_seed = *o.seed;
    if (o.threads) config.forecast.threads = *o.threads;
    config.validate();
    if (!config.heston.cir.satisfies_feller()) {
        const auto& c = config.heston.cir;
        if (c.xi * c.xi > 2.0 * c.kappa * c.theta * (1.0 + 1e-12)) {
            err << "warning: Feller condition fails (xi^2 > 2 kappa theta); variance may touch zero\n";
        }
    }

    const auto ensemble = run_ensemble(config.heston, config.seasonal, config.shock, config.forecast, label);

    const auto dir = prepare_out(o.out);
    write_file(dir / "ensemble.csv", [&](std::ostream& f) { write_ensemble_csv(f, ensemble); });
    manifest.emplace_back("run.output.1", "ensemble.csv");
    if (o.plot) {
        write_file(dir / "fan_chart.svg", [&](std::ostream& f) { write_fan_chart_svg(f, ensemble, label); });
        manifest.emplace_back("run.output.2", "fan_chart.svg");
    }
    const auto entries = config_entries(config);
    manifest.insert(manifest.end(), entries.begin(), entries.end());
    write_file(dir / "manifest.txt", [&](std::ostream& f) { write_manifest(f, manifest); });

    out << label << '\n';
    out << "start rate " << pct(config.heston.c1, 4) << ", " << config.forecast.n_sims << " paths, seed "
        << config.forecast.master_seed << '\n';
    if (ensemble.horizon() > 0) {
        const int last = ensemble.horizon() - 1;
        const auto ym = config.forecast.start.plus_months(last);
        out << ym.to_string() << ":";
        for (double level : ensemble.levels) out << "  p" << format_number(level) << ' ' << pct(ensemble.at(last, level), 4);
        out << "\nfraction of paths below the start rate: " << format_fixed(ensemble.below_start[static_cast<std::size_t>(last)], 4)
            << '\n';
    } else {
        out << "empty horizon\n";
    }
    out << "wrote " << (dir / "ensemble.csv").string() << (o.plot ? " and fan_chart.svg" : "") << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

struct BacktestOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> sets;
    std::string train = "2009-01:2013-12";
    std::string test = "2014-01:2018-12";
    std::vector<std::string> models;
    std::string sarima_order;
    int sims = 5000;
    std::uint64_t seed = 42;
    std::optional<int> threads;
    std::string out = "out";
};

SarimaOrder parse_sarima_order(const std::string& text) {
    std::vector<int> v;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ArgumentError("--sarima-order: `" + item + "` is not an integer");
        }
    }
    if (v.size() != 7) throw ArgumentError("--sarima-order expects p,d,q,P,D,Q,m");
    SarimaOrder order{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    order.validate();
    return order;
}

int cmd_compare(const BacktestOptions& o, const std::string& command, std::ostream& out) {
    const auto data = load_inputs(o.inputs, {"bundled:2009-2013", "bundled:2014-2018"});
    const auto settings = split_settings(o.sets);
    if (!settings.rest.empty()) {
        throw ArgumentError("`" + settings.rest.front().first + "` cannot be set for a backtest");
    }
    BacktestSpec base;
    base.train = MonthRange::parse(o.train);
    base.test = MonthRange::parse(o.test);
    base.overrides = settings.overrides;
    base.n_sims = o.sims;
    base.master_seed = o.seed;
    if (o.threads) base.threads = *o.threads;
    if (!o.sarima_order.empty()) base.sarima_order = parse_sarima_order(o.sarima_order);
    if (o.sims < 1) throw ArgumentError("--sims must be >= 1");
    for (const auto* range : {&base.train, &base.test}) {
        if (range->size() > 0 && !data.series.covers(*range)) {
            throw ArgumentError("window " + range->first.to_string() + ":" + range->last.to_string() +
                                " is not covered by the data (" + data.series.start().to_string() + ".." +
                                data.series.end().to_string() + ")");
        }
    }

    std::vector<BacktestSpec> specs;
    for (const auto& m : o.models.empty() ? std::vector<std::string>{"heston"} : o.models) {
        auto spec = base;
        spec.model = parse_model_kind(m);
        specs.push_back(spec);
    }

    const auto dir = prepare_out(o.out);
    auto manifest = run_header(command);
    manifest.insert(manifest.end(), data.sources.begin(), data.sources.end());
    manifest.emplace_back("run.train", o.train);
    manifest.emplace_back("run.test", o.test);
    manifest.emplace_back("run.sims", std::to_string(base.n_sims));
    manifest.emplace_back("run.seed", std::to_string(base.master_seed));
    manifest.emplace_back("run.sarima_order", base.sarima_order.to_string());

    int status = kOk;
    int outputs = 0;
    auto record = [&](const ErrorReport& report) {
        const auto name = "report_" + report.model + ".csv";
        write_file(dir / name, [&](std::ostream& f) { write_report_csv(f, report); });
        manifest.emplace_back("run.output." + std::to_string(++outputs), name);
        out << format_report_table(report) << '\n';
    };

    if (command == "backtest") {
        if (specs.size() != 1) throw ArgumentError("backtest takes a single --model; use compare for several");
        record(backtest(specs.front(), data.series));
    } else {
        const auto cmp = compare_models(specs, data.series);
        for (const auto& col : cmp.columns) {
            if (col.report) record(*col.report);
        }
        const auto table = format_comparison_table(cmp);
        write_file(dir / "comparison.txt", [&](std::ostream& f) { f << table; });
        manifest.emplace_back("run.output." + std::to_string(++outputs), "comparison.txt");
        out << table;
        if (std::any_of(cmp.columns.begin(), cmp.columns.end(), [](const auto& c) { return !c.report; })) {
            status = kNumerical;
        }
    }
    write_file(dir / "manifest.txt", [&](std::ostream& f) { write_manifest(f, manifest); });
    return status;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ArgumentError*>(&e) || dynamic_cast<const FellerViolation*>(&e) ||
        dynamic_cast<const ParseError*>(&e)) {
        return kUsage;
    }
    if (dynamic_cast<const StructuralError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kData;
    return kNumerical;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic-volatility forecasts of monthly road collision rates", "roadsv"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ROADSV_VERSION));

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Estimate model parameters from monthly data");
    estimate->add_option("--input", est.inputs, "CSV file or bundled:2009-2013 / bundled:2014-2018 (repeatable)");
    estimate->add_option("--set", est.sets, "Override a parameter, key=value (repeatable)");
    estimate->add_option("--out", est.out, "Output directory")->capture_default_str();

    ForecastOptions fc;
    auto add_forecast_flags = [&fc](CLI::App* sub) {
        sub->add_option("--params", fc.params, "Parameter file written by `estimate`");
        sub->add_option("--input", fc.inputs, "Data used to resolve a scenario (default bundled:2014-2018)");
        sub->add_option("--months", fc.months, "Forecast horizon in months");
        sub->add_option("--sims", fc.sims, "Number of simulated paths");
        sub->add_option("--seed", fc.seed, "Master seed");
        sub->add_option("--threads", fc.threads, "Worker threads (0 = all cores); results do not depend on it");
        sub->add_option("--set", fc.sets, "Override a parameter, key=value (repeatable)");
        sub->add_flag("--plot", fc.plot, "Also write fan_chart.svg");
        sub->add_option("--out", fc.out, "Output directory")->capture_default_str();
    };
    auto* forecast = app.add_subcommand("forecast", "Simulate an ensemble and write percentile bands");
    add_forecast_flags(forecast);
    forecast->add_option("--scenario", fc.scenario, "Use preset scenario 1-6");
    auto* scenario = app.add_subcommand("scenario", "Forecast one of the six preset scenarios");
    add_forecast_flags(scenario);
    scenario->add_option("--scenario", fc.scenario, "Preset scenario 1-6")->required();

    BacktestOptions bt;
    auto add_backtest_flags = [&bt](CLI::App* sub) {
        sub->add_option("--input", bt.inputs, "CSV file or bundled dataset (repeatable, concatenated)");
        sub->add_option("--train", bt.train, "Train window YYYY-MM:YYYY-MM")->capture_default_str();
        sub->add_option("--test", bt.test, "Test window YYYY-MM:YYYY-MM")->capture_default_str();
        sub->add_option("--sims", bt.sims, "Paths per simulated model")->capture_default_str();
        sub->add_option("--seed", bt.seed, "Master seed")->capture_default_str();
        sub->add_option("--threads", bt.threads, "Worker threads (0 = all cores)");
        sub->add_option("--sarima-order", bt.sarima_order, "p,d,q,P,D,Q,m (default 7,1,1,1,1,2,12)");
        sub->add_option("--set", bt.sets, "Override an estimated Heston parameter, key=value (repeatable)");
        sub->add_option("--out", bt.out, "Output directory")->capture_default_str();
    };
    auto* backtest_cmd = app.add_subcommand("backtest", "Score one model's forecast of the test window");
    add_backtest_flags(backtest_cmd);
    backtest_cmd->add_option("--model", bt.models, "heston, vasicek or sarima")->expected(1);
    auto* compare = app.add_subcommand("compare", "Backtest several models on the same split");
    add_backtest_flags(compare);
    compare->add_option("--models", bt.models, "Comma-separated models")->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(est, out);
        if (forecast->parsed()) return cmd_forecast(fc, "forecast", out, err);
        if (scenario->parsed()) return cmd_forecast(fc, "scenario", out, err);
        if (backtest_cmd->parsed()) return cmd_compare(bt, "backtest", out);
        if (compare->parsed()) {
            if (bt.models.empty()) bt.models = {"heston", "vasicek", "sarima"};
            return cmd_compare(bt, "compare", out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kUsage;
}

} // namespace roadsv::cli
