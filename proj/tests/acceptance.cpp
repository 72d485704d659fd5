// Acceptance suite. Usage: roadsv_acceptance [criterion ...]; no arguments runs 1..8.
// Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include "roadsv/dataset.hpp"
#include "roadsv/evaluation.hpp"
#include "roadsv/heston.hpp"
#include "roadsv/sarima.hpp"
#include "roadsv/seasonal.hpp"
#include "roadsv/sde.hpp"
#include "roadsv/vasicek.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace roadsv;

namespace {

constexpr int kPaths = 5000;
constexpr int kHorizon = 312; // 2019-01 .. 2044-12
constexpr int kDec2044 = kHorizon - 1;
constexpr std::uint64_t kSeed = 42;
constexpr double kStart = 0.00159;

struct Check {
    std::vector<std::string> failures;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void within(double value, double lo, double hi, const std::string& what) {
        std::ostringstream os;
        os << what << "=" << value << " in [" << lo << ", " << hi << "]";
        expect(value >= lo && value <= hi, os.str());
        note(what, value);
    }
    void note(const std::string& what, double value) { detail << ' ' << what << '=' << value; }
};

RateSeries all_data() { return RateSeries::concat(bundled_series_2009_2013(), bundled_series_2014_2018()); }

ForecastEnsemble scenario_ensemble(int id, int paths = kPaths, int threads = 0) {
    const auto preset = scenario_preset(id);
    const auto series = bundled_series_2014_2018();
    const auto est = apply_scenario(series, preset);
    ForecastConfig cfg;
    cfg.horizon_months = kHorizon;
    cfg.n_sims = paths;
    cfg.master_seed = kSeed;
    cfg.start = series.end().plus_months(1);
    cfg.threads = threads;
    auto seasonal = est.seasonal;
    seasonal.start_month = cfg.start.month;
    return run_ensemble(est.params, seasonal, preset.shock, cfg, preset.label);
}

// Calendar-year means of the median path, keyed by year.
std::map<int, double> yearly_median_means(const ForecastEnsemble& e) {
    std::map<int, std::pair<double, int>> acc;
    for (int m = 0; m < e.horizon(); ++m) {
        auto& [sum, n] = acc[e.config.start.plus_months(m).year];
        sum += e.median(m);
        ++n;
    }
    std::map<int, double> out;
    for (const auto& [y, sn] : acc) out[y] = sn.first / sn.second;
    return out;
}

void criterion_1(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recent = compute_series_stats(bundled_series_2014_2018());
    const auto early = compute_series_stats(bundled_series_2009_2013());
    const auto grid = default_amplitude_grid();
    const auto amp_recent = fit_amplitude(bundled_series_2014_2018(), grid).amplitude;
    const auto amp_early = fit_amplitude(bundled_series_2009_2013(), grid).amplitude;
    const auto est = estimate_heston_params(bundled_series_2009_2013());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    c.within(recent.annualized_volatility, 0.2709 - 0.0010, 0.2709 + 0.0010, "vol_2014_2018");
    c.within(recent.monthly_logdiff_std, 0.0782 - 0.0005, 0.0782 + 0.0005, "logdiff_std_2014_2018");
    c.within(amp_recent, 0.075 - 1e-12, 0.075 + 1e-12, "amplitude_2014_2018");
    c.within(recent.vol_of_vol, 0.275, 0.295, "vol_of_vol_2014_2018");
    c.within(early.annualized_volatility, 0.4057 - 0.0010, 0.4057 + 0.0010, "vol_2009_2013");
    c.within(early.vol_of_vol, 0.2274 - 0.010, 0.2274 + 0.010, "vol_of_vol_2009_2013");
    c.within(amp_early, 0.09 - 1e-12, 0.09 + 1e-12, "amplitude_2009_2013");
    c.within(est.params.cir.kappa, 0.16 - 0.01, 0.16 + 0.01, "kappa_2009_2013");
    c.within(est.params.rho, 0.60 - 0.05, 0.60 + 0.05, "rho_2009_2013");
    c.within(secs, 0.0, 1.0, "seconds");
}

void criterion_2(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = backtest(BacktestSpec::reference(ModelKind::heston), all_data());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.within(report.average.mape_value(), 0.032, 0.065, "avg_mape");
    for (const auto& y : report.years) c.within(y.metrics.mape_value(), 0.0, 0.08, "mape_" + std::to_string(y.year));
    c.within(secs, 0.0, 30.0, "seconds");
}

void criterion_3(Check& c) {
    std::vector<BacktestSpec> specs;
    for (auto kind : {ModelKind::heston, ModelKind::vasicek, ModelKind::sarima}) {
        specs.push_back(BacktestSpec::reference(kind));
    }
    const auto cmp = compare_models(specs, all_data());
    for (const auto& col : cmp.columns) {
        c.expect(col.report.has_value(), std::string(model_name(col.spec.model)) + " failed: " + col.failure);
    }
    if (!c.failures.empty()) return;
    const double heston = cmp.columns[0].report->average.mape_value();
    const double vasicek = cmp.columns[1].report->average.mape_value();
    const double sarima = cmp.columns[2].report->average.mape_value();
    c.note("heston", heston);
    c.expect(heston < vasicek, "heston < vasicek");
    c.expect(heston < sarima, "heston < sarima");
    c.within(vasicek, 0.045, 0.095, "vasicek");
    c.within(sarima, 0.045, 0.105, "sarima");
}

void criterion_4(Check& c) {
    const auto e = scenario_ensemble(1);
    c.within(e.median(kDec2044), 0.0015, 0.0025, "p50_dec2044");
    c.within(e.at(kDec2044, 10.0), 0.0, 0.0007, "p10_dec2044");
    c.within(e.at(kDec2044, 90.0), 0.0035, 1.0, "p90_dec2044");
    c.note("below_start", fraction_below_start(e, kDec2044));
}

void criterion_5(Check& c) {
    const auto e = scenario_ensemble(6);
    c.within(e.median(kDec2044), 0.0006, 0.0010, "p50_dec2044");
    c.within(fraction_below_start(e, kDec2044), 0.68, 0.82, "below_start");
}

void criterion_6(Check& c) {
    // Scenario 3: rise of at least 30% by December 2044.
    const auto s3 = scenario_ensemble(3);
    c.within(s3.median(kDec2044) / kStart, 1.30, 1e9, "s3_ratio_dec2044");

    // Scenarios 2 and 4: the 2023 yearly mean of the median sits below both the
    // 2019 mean and the start rate.
    for (int id : {2, 4}) {
        const auto means = yearly_median_means(scenario_ensemble(id));
        const std::string tag = "s" + std::to_string(id);
        c.note(tag + "_2019", means.at(2019) / kStart);
        c.note(tag + "_2023", means.at(2023) / kStart);
        c.expect(means.at(2023) < means.at(2019) && means.at(2023) < kStart, tag + " initial decline");
        if (id == 4) {
            const auto trough = std::min_element(means.begin(), means.end(),
                                                 [](const auto& a, const auto& b) { return a.second < b.second; });
            const double end_gap = std::abs(means.at(2044) - kStart);
            const double trough_gap = std::abs(trough->second - kStart);
            c.note("s4_trough", trough->second / kStart);
            c.note("s4_2044", means.at(2044) / kStart);
            c.expect(end_gap < trough_gap, "s4 reverts toward start by 2044");
        }
    }

    // Scenario 5: every monthly median of 2040..2044 within 15% of start.
    const auto s5 = scenario_ensemble(5);
    double lo = 1e9, hi = -1e9;
    for (int m = kHorizon - 60; m < kHorizon; ++m) {
        lo = std::min(lo, s5.median(m) / kStart);
        hi = std::max(hi, s5.median(m) / kStart);
    }
    c.within(lo, 0.85, 1.15, "s5_min_ratio_2040_2044");
    c.within(hi, 0.85, 1.15, "s5_max_ratio_2040_2044");
}

void criterion_7(Check& c) {
    auto cfg = GompertzShockConfig::standard();
    cfg.suppress_while_active = false;
    double expected = 0.0, var = 0.0;
    for (int t = 1; t <= 1200; ++t) {
        const double p = gompertz_pdf(t, cfg);
        expected += p;
        var += p * (1.0 - p);
    }
    long triggers = 0;
    for (int i = 0; i < kPaths; ++i) {
        RngStream rng(kSeed, static_cast<std::uint64_t>(i));
        ShockState st;
        for (int t = 1; t <= 1200; ++t) {
            const auto s = shock_step(st, t, rng, cfg);
            triggers += s.triggered ? 1 : 0;
            st = s.state;
        }
    }
    const double mean = static_cast<double>(triggers) / kPaths;
    const double se = std::sqrt(var / kPaths);
    c.note("expected_triggers", expected);
    c.within(mean, expected - 3.0 * se, expected + 3.0 * se, "mean_triggers");

    auto forced = GompertzShockConfig::standard();
    forced.b = 10.0;
    forced.eta = 1.0;
    RngStream rng(kSeed, 0);
    std::vector<long> counts(4, 0);
    const long n = 1000000;
    for (long i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(shock_step({}, 0, rng, forced).multiplier) - 2];
    for (int a = 0; a < 4; ++a) {
        c.within(static_cast<double>(counts[static_cast<std::size_t>(a)]) / n, 0.24, 0.26,
                 "alpha" + std::to_string(a + 2));
    }

    c.within(mean_multiplier(GompertzShockConfig::standard(), kHorizon, kPaths, kSeed), 1.15, 1.65, "mean_G");
}

void criterion_8(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();

    // CIR non-negativity.
    {
        RngStream rng(kSeed, 1);
        long bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const CirParams p{rng.uniform() * 3.0, rng.uniform() * 0.3, rng.uniform() * 2.0, 0.0};
            double v = rng.uniform() * 0.3;
            for (int i = 0; i < 1000; ++i) {
                v = cir_step(v, 1.0 / 12.0, p, rng.normal());
                bad += v >= 0.0 ? 0 : 1;
            }
        }
        c.expect(bad == 0, "CIR produced negative variance");
    }

    // Percentile monotonicity on every scenario ensemble, plus serial/parallel identity.
    for (int id = 1; id <= 6; ++id) {
        const auto e = scenario_ensemble(id, 500, 1);
        for (const auto& row : e.percentiles) {
            if (!std::is_sorted(row.begin(), row.end())) {
                c.expect(false, "percentiles not monotone in scenario " + std::to_string(id));
                break;
            }
        }
        const auto par = scenario_ensemble(id, 500, 4);
        const auto again = scenario_ensemble(id, 500, 4);
        c.expect(e.percentiles == par.percentiles, "serial vs parallel differ in scenario " + std::to_string(id));
        c.expect(par.percentiles == again.percentiles, "repeat run differs in scenario " + std::to_string(id));
    }

    // Degenerate closed forms.
    {
        HestonParams p;
        p.c1 = kStart;
        p.mu = 0.0183;
        ForecastConfig cfg;
        cfg.horizon_months = 12;
        RngStream rng(kSeed, 0);
        const auto decay = simulate_path(p, {}, {}, rng, cfg);
        c.expect(std::abs(decay.base[11] - kStart * (1.0 - 0.0183)) < 1e-12, "linear decay");
        p.mu = 0.0;
        const auto flat = simulate_path(p, {}, {}, rng, cfg);
        c.expect(std::all_of(flat.adjusted.begin(), flat.adjusted.end(), [](double v) { return v == kStart; }),
                 "constant path");
        const auto seasonal = simulate_path(p, {0.075}, {}, rng, cfg);
        c.expect(std::abs(seasonal.adjusted[3] - kStart * 0.925) < 1e-12 &&
                     std::abs(seasonal.adjusted[9] - kStart * 1.075) < 1e-12,
                 "seasonal extremes");
        double sum = 0.0;
        for (int m = 1; m <= 12; ++m) sum += seasonal_factor(m);
        c.expect(std::abs(sum) < 1e-12, "seasonal factors sum to zero");
    }

    // Correlated normals.
    for (double rho : {0.0, 0.6}) {
        RngStream rng(kSeed, 2);
        const int n = 1000000;
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const auto z = correlated_pair(rng, rho);
            sx += z.z_c;
            sy += z.z_v;
            sxx += z.z_c * z.z_c;
            syy += z.z_v * z.z_v;
            sxy += z.z_c * z.z_v;
        }
        const double r = (sxy / n - sx / n * sy / n) /
                         std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
        c.within(r, rho - 0.005, rho + 0.005, "corr_" + std::to_string(rho).substr(0, 3));
    }

    // SARIMA filter / inverse filter.
    {
        const auto r = bundled_series_2009_2013().rates();
        const auto fit = fit_sarima(r, {2, 1, 1, 1, 1, 1, 12});
        const auto back = sarima_reconstruct(fit, std::span<const double>(r.data(), 13), sarima_residuals(fit, r));
        double worst = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(back[i] - r[i]));
        c.expect(worst < 1e-15, "SARIMA filter/inverse identity");
    }

    // OU round trip: kappa 0.5, theta 0.001, sigma 0.0002 over 600 months, +-20%.
    {
        RngStream rng(kSeed, 3);
        const double dt = 1.0 / 12.0;
        std::vector<double> x{0.001};
        for (int i = 1; i < 600; ++i) {
            x.push_back(x.back() + 0.5 * (0.001 - x.back()) * dt + 0.0002 * std::sqrt(dt) * rng.normal());
        }
        const auto fit = estimate_vasicek(x);
        c.within(fit.params.theta / 0.001, 0.8, 1.2, "ou_theta_ratio");
        c.within(fit.params.sigma / 0.0002, 0.8, 1.2, "ou_sigma_ratio");
        c.within(fit.params.kappa / 0.5, 0.8, 1.2, "ou_kappa_ratio");
    }

    // SARIMA recovery: (1,0,0)x(0,1,1)12 with phi 0.5, Theta -0.4 over 360 months, +-0.15.
    {
        RngStream rng(kSeed, 4);
        const int n = 360, burn = 120;
        std::vector<double> e, w, y;
        for (int t = 0; t < n + burn; ++t) {
            e.push_back(rng.normal());
            const double prev = t > 0 ? w.back() : 0.0;
            const double se = t >= 12 ? e[static_cast<std::size_t>(t - 12)] : 0.0;
            w.push_back(0.5 * prev + e.back() - 0.4 * se);
        }
        for (int t = 0; t < n + burn; ++t) {
            y.push_back(w[static_cast<std::size_t>(t)] + (t >= 12 ? y[static_cast<std::size_t>(t - 12)] : 0.0));
        }
        const std::span<const double> sample(y.data() + burn, n);
        const auto fit = fit_sarima(sample, {1, 0, 0, 0, 1, 1, 12});
        c.within(fit.ar[0], 0.35, 0.65, "sarima_phi");
        c.within(fit.seasonal_ma[0], -0.55, -0.25, "sarima_Theta");
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.within(secs, 0.0, 60.0, "seconds");
}

const std::map<int, std::pair<std::string, std::function<void(Check&)>>>& criteria() {
    static const std::map<int, std::pair<std::string, std::function<void(Check&)>>> table{
        {1, {"parameter reproduction", criterion_1}},
        {2, {"short-term Heston backtest", criterion_2}},
        {3, {"model ranking", criterion_3}},
        {4, {"long-term baseline (scenario 1)", criterion_4}},
        {5, {"scenario 6", criterion_5}},
        {6, {"scenario qualitative outcomes", criterion_6}},
        {7, {"shock machinery", criterion_7}},
        {8, {"property suites", criterion_8}},
    };
    return table;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty()) {
        for (const auto& [id, _] : criteria()) ids.push_back(id);
    }

    int failed = 0;
    for (int id : ids) {
        const auto it = criteria().find(id);
        if (it == criteria().end()) {
            std::cout << "criterion " << id << ": FAIL unknown criterion\n";
            ++failed;
            continue;
        }
        Check c;
        try {
            it->second.second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool pass = c.failures.empty();
        failed += pass ? 0 : 1;
        std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << ' ' << it->second.first << " |"
                  << c.detail.str() << '\n';
        for (const auto& f : c.failures) std::cout << "    failed: " << f << '\n';
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
