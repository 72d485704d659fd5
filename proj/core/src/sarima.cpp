#include "roadsv/sarima.hpp"

#include "nelder_mead.hpp"
#include "roadsv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <locale>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace roadsv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Product of two polynomials given by coefficient vectors (index = power of B).
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// 1 + sign * sum c_k B^(step k)
std::vector<double> lag_poly(std::span<const double> c, int step, double sign) {
    std::vector<double> out(c.size() * static_cast<std::size_t>(step) + 1, 0.0);
    out[0] = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) out[(k + 1) * static_cast<std::size_t>(step)] = sign * c[k];
    return out;
}

// Coefficients of (1 - B)^d (1 - B^m)^D.
std::vector<double> differencing_poly(int d, int D, int m) {
    std::vector<double> out{1.0};
    const std::vector<double> one{1.0, -1.0};
    std::vector<double> seasonal(static_cast<std::size_t>(m) + 1, 0.0);
    seasonal.front() = 1.0;
    seasonal.back() = -1.0;
    for (int i = 0; i < d; ++i) out = poly_mul(out, one);
    for (int i = 0; i < D; ++i) out = poly_mul(out, seasonal);
    return out;
}

// Unconstrained reals -> partial autocorrelations in (-1, 1) -> coefficients of a
// stationary 1 - sum phi_k B^k (Durbin-Levinson recursion).
std::vector<double> pacf_to_ar(std::span<const double> x) {
    std::vector<double> phi(x.size()), prev;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = x[k] / std::sqrt(1.0 + x[k] * x[k]);
        prev = phi;
        for (std::size_t j = 0; j < k; ++j) phi[j] = prev[j] - r * prev[k - 1 - j];
        phi[k] = r;
    }
    return phi;
}

// Step-down recursion; returns the partial autocorrelations or nothing when
// some |r| >= 1.
std::optional<std::vector<double>> ar_to_pacf(std::span<const double> ar) {
    std::vector<double> phi(ar.begin(), ar.end());
    std::vector<double> r(ar.size());
    for (std::size_t k = phi.size(); k-- > 0;) {
        const double rk = phi[k];
        if (!(std::abs(rk) < 1.0)) return std::nullopt;
        r[k] = rk;
        std::vector<double> prev(k);
        for (std::size_t j = 0; j < k; ++j) prev[j] = (phi[j] + rk * phi[k - 1 - j]) / (1.0 - rk * rk);
        phi.assign(prev.begin(), prev.end());
    }
    return r;
}

std::vector<double> ar_to_unconstrained(std::span<const double> ar) {
    auto r = ar_to_pacf(ar);
    if (!r) throw ConstraintError("coefficients outside the stationary region");
    std::vector<double> x;
    for (double v : *r) x.push_back(v / std::sqrt(1.0 - v * v));
    return x;
}

struct Layout {
    SarimaOrder order;

    std::size_t size() const { return static_cast<std::size_t>(order.n_coefficients()); }

    // x holds transformed p, q, P, Q blocks followed by the standardized mean.
    void unpack(std::span<const double> x, SarimaModel& model, double& mean, double w_mean,
                double w_scale) const {
        std::size_t at = 0;
        auto block = [&](int n) {
            auto s = x.subspan(at, static_cast<std::size_t>(n));
            at += static_cast<std::size_t>(n);
            return s;
        };
        auto negate = [](std::vector<double> v) {
            for (double& c : v) c = -c;
            return v;
        };
        model.ar = pacf_to_ar(block(order.p));
        model.ma = negate(pacf_to_ar(block(order.q)));
        model.seasonal_ar = pacf_to_ar(block(order.P));
        model.seasonal_ma = negate(pacf_to_ar(block(order.Q)));
        mean = order.has_intercept() ? w_mean + w_scale * x[at] : 0.0;
    }

    std::vector<double> pack(const SarimaModel& model, double mean, double w_mean, double w_scale) const {
        std::vector<double> x;
        auto append = [&](const std::vector<double>& v) { x.insert(x.end(), v.begin(), v.end()); };
        auto negate = [](std::vector<double> v) {
            for (double& c : v) c = -c;
            return v;
        };
        append(ar_to_unconstrained(model.ar));
        append(ar_to_unconstrained(negate(model.ma)));
        append(ar_to_unconstrained(model.seasonal_ar));
        append(ar_to_unconstrained(negate(model.seasonal_ma)));
        if (order.has_intercept()) x.push_back((mean - w_mean) / w_scale);
        return x;
    }
};

struct Likelihood {
    double neg_profile = kInf; // n/2 ln(S/n) + 1/2 ln det Gamma
    double sigma2 = 0.0;
};

Likelihood exact_likelihood(std::span<const double> w, const std::vector<double>& a,
                            const std::vector<double>& b, double mean) {
    const auto n = static_cast<int>(w.size());
    Likelihood out;
    std::vector<double> gamma;
    try {
        gamma = arma_autocovariance(a, b, n - 1);
    } catch (const Error&) {
        return out;
    }
    if (!(gamma[0] > 0.0) || !std::isfinite(gamma[0])) return out;

    // Durbin-Levinson on the Toeplitz covariance: one-step prediction errors
    // e_k with variances r_k give ss = sum e_k^2 / r_k and ln det = sum ln r_k.
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0), prev(static_cast<std::size_t>(n), 0.0);
    double r = gamma[0];
    double ss = 0.0;
    double logdet = 0.0;
    for (int k = 0; k < n; ++k) {
        double pred = 0.0;
        for (int j = 1; j <= k; ++j) pred += phi[static_cast<std::size_t>(j)] * (w[static_cast<std::size_t>(k - j)] - mean);
        const double e = w[static_cast<std::size_t>(k)] - mean - pred;
        ss += e * e / r;
        logdet += std::log(r);
        if (k + 1 == n) break;
        double num = gamma[static_cast<std::size_t>(k + 1)];
        for (int j = 1; j <= k; ++j) num -= phi[static_cast<std::size_t>(j)] * gamma[static_cast<std::size_t>(k + 1 - j)];
        const double pk = num / r;
        if (!(std::abs(pk) < 1.0)) return out;
        prev = phi;
        phi[static_cast<std::size_t>(k + 1)] = pk;
        for (int j = 1; j <= k; ++j) {
            phi[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j)] - pk * prev[static_cast<std::size_t>(k + 1 - j)];
        }
        r *= 1.0 - pk * pk;
        if (!(r > 0.0)) return out;
    }
    if (!(ss > 0.0) || !std::isfinite(logdet)) return out;
    out.sigma2 = ss / n;
    out.neg_profile = 0.5 * n * std::log(out.sigma2) + 0.5 * logdet;
    return out;
}

std::vector<double> conditional_residuals(std::span<const double> w, const std::vector<double>& a,
                                          const std::vector<double>& b, double mean) {
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = 0; t < w.size(); ++t) {
        double v = w[t] - mean;
        for (std::size_t i = 1; i <= a.size() && i <= t; ++i) v -= a[i - 1] * (w[t - i] - mean);
        for (std::size_t j = 1; j <= b.size() && j <= t; ++j) v -= b[j - 1] * e[t - j];
        e[t] = v;
    }
    return e;
}

double css_objective(std::span<const double> w, const std::vector<double>& a, const std::vector<double>& b,
                     double mean) {
    const auto e = conditional_residuals(w, a, b, mean);
    const std::size_t skip = std::min(a.size(), w.size() - 1);
    double ss = 0.0;
    for (std::size_t t = skip; t < e.size(); ++t) ss += e[t] * e[t];
    const double n = static_cast<double>(e.size() - skip);
    if (!(ss > 0.0) || !std::isfinite(ss)) return kInf;
    return 0.5 * n * std::log(ss / n);
}

double log_likelihood_from_profile(double neg_profile, int n) {
    return -0.5 * n * (std::log(2.0 * std::numbers::pi) + 1.0) - neg_profile;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_number(v[i]);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

void SarimaOrder::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0) throw ArgumentError("SARIMA orders must be >= 0");
    if (m < 1) throw ArgumentError("SARIMA season length must be >= 1");
}

std::string SarimaOrder::to_string() const {
    std::ostringstream os;
    os << '(' << p << ',' << d << ',' << q << ")x(" << P << ',' << D << ',' << Q << ')' << m;
    return os.str();
}

std::vector<double> SarimaModel::expanded_ar() const {
    auto poly = poly_mul(lag_poly(ar, 1, -1.0), lag_poly(seasonal_ar, order.m, -1.0));
    std::vector<double> out;
    for (std::size_t k = 1; k < poly.size(); ++k) out.push_back(-poly[k]);
    return out;
}

std::vector<double> SarimaModel::expanded_ma() const {
    auto poly = poly_mul(lag_poly(ma, 1, 1.0), lag_poly(seasonal_ma, order.m, 1.0));
    poly.erase(poly.begin());
    return poly;
}

double SarimaModel::mean() const {
    const auto a = expanded_ar();
    const double denom = 1.0 - std::accumulate(a.begin(), a.end(), 0.0);
    return intercept / denom;
}

std::vector<double> difference(std::span<const double> series, int d, int D, int m) {
    const auto c = differencing_poly(d, D, m);
    const std::size_t loss = c.size() - 1;
    if (series.size() <= loss) return {};
    std::vector<double> w;
    w.reserve(series.size() - loss);
    for (std::size_t t = loss; t < series.size(); ++t) {
        double v = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * series[t - k];
        w.push_back(v);
    }
    return w;
}

bool is_stationary(std::span<const double> ar) { return ar_to_pacf(ar).has_value(); }

std::vector<double> arma_autocovariance(std::span<const double> ar, std::span<const double> ma, int max_lag) {
    if (!is_stationary(ar)) throw DomainError("AR polynomial is not stationary");
    const std::size_t p = ar.size();
    const std::size_t q = ma.size();
    // psi weights up to lag q, with b_0 = 1.
    std::vector<double> b{1.0};
    for (double c : ma) b.push_back(c);
    std::vector<double> psi(q + 1, 0.0);
    for (std::size_t j = 0; j <= q; ++j) {
        psi[j] = b[j];
        for (std::size_t i = 1; i <= std::min(j, p); ++i) psi[j] += ar[i - 1] * psi[j - i];
    }
    auto rhs = [&](std::size_t k) {
        double s = 0.0;
        for (std::size_t j = k; j <= q; ++j) s += b[j] * psi[j - k];
        return s;
    };

    // gamma(k) - sum_i a_i gamma(|k - i|) = rhs(k), k = 0..p.
    const auto dim = static_cast<Eigen::Index>(p + 1);
    Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd r(dim);
    for (std::size_t k = 0; k <= p; ++k) {
        for (std::size_t i = 1; i <= p; ++i) {
            const auto lag = static_cast<Eigen::Index>(k >= i ? k - i : i - k);
            sys(static_cast<Eigen::Index>(k), lag) -= ar[i - 1];
        }
        r(static_cast<Eigen::Index>(k)) = rhs(k);
    }
    const Eigen::VectorXd g = sys.fullPivLu().solve(r);

    const std::size_t want = static_cast<std::size_t>(std::max(max_lag, 0)) + 1;
    std::vector<double> gamma(std::max(want, p + 1));
    for (std::size_t k = 0; k <= p; ++k) gamma[k] = g(static_cast<Eigen::Index>(k));
    for (std::size_t k = p + 1; k < gamma.size(); ++k) {
        double v = rhs(k);
        for (std::size_t i = 1; i <= p; ++i) v += ar[i - 1] * gamma[k - i];
        gamma[k] = v;
    }
    gamma.resize(want);
    return gamma;
}

SarimaModel fit_sarima(std::span<const double> series, const SarimaOrder& order, const SarimaFitOptions& options) {
    order.validate();
    const auto min_len = static_cast<std::size_t>(order.differencing_loss() + std::max(order.p, order.q) +
                                                  order.m * std::max(order.P, order.Q) + 10);
    if (series.size() <= min_len) {
        throw ArgumentError("series of length " + std::to_string(series.size()) + " is too short for SARIMA" +
                            order.to_string());
    }
    const auto w = difference(series, order.d, order.D, order.m);
    const double w_mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    double w_scale = 0.0;
    for (double v : w) w_scale += (v - w_mean) * (v - w_mean);
    w_scale = std::sqrt(w_scale / static_cast<double>(w.size()));
    if (!(w_scale > 0.0)) w_scale = std::max(std::abs(w_mean), 1.0) * 1e-8;

    const Layout layout{order};
    SarimaModel model;
    model.order = order;
    model.n_obs = static_cast<int>(w.size());

    auto objective = [&](bool exact) {
        return [&, exact](const std::vector<double>& x) {
            SarimaModel trial;
            trial.order = order;
            double mean = 0.0;
            layout.unpack(x, trial, mean, w_mean, w_scale);
            const auto a = trial.expanded_ar();
            const auto b = trial.expanded_ma();
            const double v = exact ? exact_likelihood(w, a, b, mean).neg_profile : css_objective(w, a, b, mean);
            return std::isfinite(v) ? v : kInf;
        };
    };

    const std::size_t k = layout.size();
    std::vector<double> x(k, 0.0);
    const std::vector<double> step(k, 0.1);

    if (k > 0) {
        const auto css = detail::nelder_mead(objective(false), x, step, options.max_iterations, options.tolerance);
        if (std::isfinite(css.value)) x = css.x;
    }

    const auto ml = objective(true);
    auto run = detail::nelder_mead(ml, x, step, options.max_iterations, options.tolerance);
    std::vector<double> trace = run.trace;
    if (trace.empty()) trace.push_back(run.value);
    int iterations = run.iterations;
    bool settled = false;
    for (int r = 0; r < options.max_restarts && k > 0; ++r) {
        const double before = run.value;
        const bool was_converged = run.converged;
        auto next = detail::nelder_mead(ml, run.x, step, options.max_iterations, options.tolerance);
        for (double v : next.trace) trace.push_back(std::min(v, trace.back()));
        iterations += next.iterations;
        if (next.value <= run.value) run = std::move(next);
        if (run.converged && was_converged && before - run.value <= options.tolerance) {
            settled = true;
            break;
        }
    }
    if (k == 0) settled = true;
    if (!std::isfinite(run.value)) {
        throw ConvergenceError("SARIMA" + order.to_string() + ": likelihood is not finite at any iterate", run.x,
                               run.value);
    }
    if (!settled && !run.converged) {
        throw ConvergenceError("SARIMA" + order.to_string() + ": simplex did not reach tolerance", run.x, run.value);
    }

    double mean = 0.0;
    layout.unpack(run.x, model, mean, w_mean, w_scale);
    for (const auto* poly : {&model.ar, &model.seasonal_ar}) {
        auto pacf = ar_to_pacf(*poly);
        if (!pacf || std::any_of(pacf->begin(), pacf->end(), [](double v) { return std::abs(v) > 1.0 - 1e-10; })) {
            throw ConstraintError("SARIMA" + order.to_string() + ": AR polynomial on the stationarity boundary");
        }
    }
    for (const auto* poly : {&model.ma, &model.seasonal_ma}) {
        std::vector<double> neg(poly->begin(), poly->end());
        for (double& c : neg) c = -c;
        auto pacf = ar_to_pacf(neg);
        if (!pacf || std::any_of(pacf->begin(), pacf->end(), [](double v) { return std::abs(v) > 1.0 - 1e-10; })) {
            throw ConstraintError("SARIMA" + order.to_string() + ": MA polynomial on the invertibility boundary");
        }
    }

    const auto a = model.expanded_ar();
    const auto lik = exact_likelihood(w, a, model.expanded_ma(), mean);
    model.intercept = mean * (1.0 - std::accumulate(a.begin(), a.end(), 0.0));
    model.innovation_variance = lik.sigma2;
    model.log_likelihood = log_likelihood_from_profile(lik.neg_profile, model.n_obs);
    model.aic = 2.0 * model.n_parameters() - 2.0 * model.log_likelihood;
    model.iterations = iterations;
    for (double v : trace) model.log_likelihood_trace.push_back(log_likelihood_from_profile(v, model.n_obs));
    return model;
}

std::vector<SarimaOrder> SarimaGrid::orders() const {
    std::vector<SarimaOrder> out;
    for (int p_ : p) {
        for (int q_ : q) {
            for (int P_ : P) {
                for (int Q_ : Q) out.push_back({p_, d, q_, P_, D, Q_, m});
            }
        }
    }
    return out;
}

SarimaSelection select_sarima_order(std::span<const double> series, const SarimaGrid& grid,
                                    const SarimaFitOptions& options, int threads) {
    const auto orders = grid.orders();
    if (orders.empty()) throw ArgumentError("SARIMA grid is empty");
    std::vector<std::optional<SarimaModel>> fits(orders.size());
    std::vector<SarimaGridCell> cells(orders.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < orders.size(); i = next++) {
            cells[i].order = orders[i];
            try {
                fits[i] = fit_sarima(series, orders[i], options);
                cells[i].aic = fits[i]->aic;
            } catch (const Error& e) {
                cells[i].failure = e.what();
            }
        }
    };
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, static_cast<int>(orders.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    }

    // Tie-breaking happens only after every cell has finished.
    std::optional<std::size_t> best;
    auto key = [&](std::size_t i) {
        const auto& o = orders[i];
        return std::tuple{o.n_coefficients(), o.p, o.q, o.P, o.Q};
    };
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (!fits[i]) continue;
        if (!best) {
            best = i;
            continue;
        }
        const double a = fits[i]->aic;
        const double b = fits[*best]->aic;
        const double tol = 1e-9 * std::max(1.0, std::abs(b));
        if (a < b - tol || (std::abs(a - b) <= tol && key(i) < key(*best))) best = i;
    }
    if (!best) throw Error("every SARIMA grid cell failed to fit");
    return {*fits[*best], std::move(cells)};
}

std::vector<double> forecast_sarima(const SarimaModel& model, std::span<const double> history, int horizon) {
    if (horizon < 0) throw ArgumentError("forecast horizon must be >= 0");
    const int loss = model.order.differencing_loss();
    if (static_cast<int>(history.size()) <= loss) {
        throw ArgumentError("history must be longer than the differencing span of " + std::to_string(loss));
    }
    if (horizon == 0) return {};
    const auto w = difference(history, model.order.d, model.order.D, model.order.m);
    const auto n = static_cast<int>(w.size());
    const double mean = model.mean();
    const auto gamma = arma_autocovariance(model.expanded_ar(), model.expanded_ma(), n + horizon - 1);

    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) cov(i, j) = gamma[static_cast<std::size_t>(std::abs(i - j))];
    }
    Eigen::VectorXd dev(n);
    for (int i = 0; i < n; ++i) dev(i) = w[static_cast<std::size_t>(i)] - mean;
    const Eigen::VectorXd weights = cov.ldlt().solve(dev);

    const auto c = differencing_poly(model.order.d, model.order.D, model.order.m);
    std::vector<double> y(history.begin(), history.end());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        double wf = mean;
        for (int i = 0; i < n; ++i) wf += gamma[static_cast<std::size_t>(n - 1 + h - i)] * weights(i);
        double yf = wf;
        for (std::size_t k = 1; k < c.size(); ++k) yf -= c[k] * y[y.size() - k];
        y.push_back(yf);
        out.push_back(std::max(yf, 0.0));
    }
    return out;
}

std::vector<double> sarima_residuals(const SarimaModel& model, std::span<const double> history) {
    const auto w = difference(history, model.order.d, model.order.D, model.order.m);
    return conditional_residuals(w, model.expanded_ar(), model.expanded_ma(), model.mean());
}

std::vector<double> sarima_reconstruct(const SarimaModel& model, std::span<const double> initial,
                                       std::span<const double> residuals) {
    const auto loss = static_cast<std::size_t>(model.order.differencing_loss());
    if (initial.size() != loss) {
        throw ArgumentError("reconstruction needs exactly " + std::to_string(loss) + " initial values");
    }
    const auto a = model.expanded_ar();
    const auto b = model.expanded_ma();
    const double mean = model.mean();
    std::vector<double> dev(residuals.size());
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        double v = residuals[t];
        for (std::size_t i = 1; i <= a.size() && i <= t; ++i) v += a[i - 1] * dev[t - i];
        for (std::size_t j = 1; j <= b.size() && j <= t; ++j) v += b[j - 1] * residuals[t - j];
        dev[t] = v;
    }
    const auto c = differencing_poly(model.order.d, model.order.D, model.order.m);
    std::vector<double> y(initial.begin(), initial.end());
    for (std::size_t t = 0; t < dev.size(); ++t) {
        double v = dev[t] + mean;
        for (std::size_t k = 1; k < c.size(); ++k) v -= c[k] * y[y.size() - k];
        y.push_back(v);
    }
    return y;
}

void write_sarima_model(std::ostream& out, const SarimaModel& model) {
    const auto& o = model.order;
    out << "order = " << o.p << ',' << o.d << ',' << o.q << ',' << o.P << ',' << o.D << ',' << o.Q << ',' << o.m
        << '\n';
    out << "ar = " << join(model.ar) << '\n';
    out << "ma = " << join(model.ma) << '\n';
    out << "seasonal_ar = " << join(model.seasonal_ar) << '\n';
    out << "seasonal_ma = " << join(model.seasonal_ma) << '\n';
    out << "intercept = " << format_number(model.intercept) << '\n';
    out << "innovation_variance = " << format_number(model.innovation_variance) << '\n';
    out << "log_likelihood = " << format_number(model.log_likelihood) << '\n';
    out << "aic = " << format_number(model.aic) << '\n';
    out << "n_obs = " << model.n_obs << '\n';
}

SarimaModel read_sarima_model(std::istream& in) {
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected `key = value`", line_no);
        kv[trim(line.substr(0, eq))] = {trim(line.substr(eq + 1)), line_no};
    }

    auto numbers = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("missing key `" + key + "`", 0);
        std::vector<double> out;
        std::string item;
        std::istringstream ss(it->second.first);
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            std::istringstream num(item);
            num.imbue(std::locale::classic());
            double v = 0.0;
            if (!(num >> v) || !num.eof()) {
                throw ParseError("`" + key + "`: not a number: " + item, it->second.second);
            }
            out.push_back(v);
        }
        return out;
    };
    auto scalar = [&](const std::string& key) {
        const auto v = numbers(key);
        if (v.size() != 1) throw ParseError("`" + key + "` must hold one number", kv[key].second);
        return v.front();
    };

    SarimaModel m;
    const auto ord = numbers("order");
    if (ord.size() != 7) throw ParseError("`order` must list p,d,q,P,D,Q,m", kv["order"].second);
    m.order = {static_cast<int>(ord[0]), static_cast<int>(ord[1]), static_cast<int>(ord[2]),
               static_cast<int>(ord[3]), static_cast<int>(ord[4]), static_cast<int>(ord[5]),
               static_cast<int>(ord[6])};
    m.order.validate();
    m.ar = numbers("ar");
    m.ma = numbers("ma");
    m.seasonal_ar = numbers("seasonal_ar");
    m.seasonal_ma = numbers("seasonal_ma");
    if (m.ar.size() != static_cast<std::size_t>(m.order.p) || m.ma.size() != static_cast<std::size_t>(m.order.q) ||
        m.seasonal_ar.size() != static_cast<std::size_t>(m.order.P) ||
        m.seasonal_ma.size() != static_cast<std::size_t>(m.order.Q)) {
        throw ParseError("coefficient counts do not match `order`", 0);
    }
    m.intercept = scalar("intercept");
    m.innovation_variance = scalar("innovation_variance");
    m.log_likelihood = scalar("log_likelihood");
    m.aic = scalar("aic");
    m.n_obs = static_cast<int>(scalar("n_obs"));
    return m;
}

} // namespace roadsv
