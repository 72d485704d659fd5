#include "roadsv/sde.hpp"

#include "roadsv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace roadsv {

void CirParams::validate() const {
    if (!(kappa >= 0.0) || !(theta >= 0.0) || !(xi >= 0.0) || !(v0 >= 0.0)) {
        throw ArgumentError("CIR parameters kappa, theta, xi, v0 must be non-negative");
    }
}

double cir_step(double v, double dt, const CirParams& p, double z_v) noexcept {
    const double vp = std::max(v, 0.0);
    const double next = v + p.kappa * (p.theta - vp) * dt + p.xi * std::sqrt(vp) * std::sqrt(dt) * z_v;
    return std::max(next, 0.0);
}

NormalPair correlated_pair(RngStream& rng, double rho) noexcept {
    NormalPair out;
    out.z_c = rng.normal();
    const double z_perp = rng.normal();
    out.z_v = rho * out.z_c + std::sqrt(std::max(0.0, 1.0 - rho * rho)) * z_perp;
    return out;
}

void GompertzShockConfig::validate() const {
    if (!(T > 0.0) || !(b > 0.0) || !(eta > 0.0)) throw ArgumentError("shock T, b, eta must be positive");
    if (duration_months < 1) throw ArgumentError("shock.duration_months must be >= 1");
    if (alpha_low < 1) throw ArgumentError("shock.alpha_low must be >= 1");
    if (alpha_high < alpha_low) throw ArgumentError("shock.alpha_high must be >= shock.alpha_low");
}

GompertzShockConfig GompertzShockConfig::standard() {
    GompertzShockConfig cfg;
    cfg.enabled = true;
    return cfg;
}

GompertzShockConfig GompertzShockConfig::inline_variant() {
    GompertzShockConfig cfg = standard();
    cfg.b = 0.03;
    cfg.eta = 0.2;
    return cfg;
}

double gompertz_pdf(double t_months, const GompertzShockConfig& cfg) noexcept {
    const double g = std::exp(cfg.b * t_months / cfg.T);
    // e^eta * e^(-eta g) combined to keep the exponent small.
    return cfg.b * cfg.eta * g * std::exp(cfg.eta * (1.0 - g));
}

double gompertz_peak_month(const GompertzShockConfig& cfg) noexcept {
    if (cfg.eta >= 1.0) return 0.0;
    return cfg.T / cfg.b * std::log(1.0 / cfg.eta);
}

ShockStep shock_step(const ShockState& state, int t_months, RngStream& rng,
                     const GompertzShockConfig& cfg) noexcept {
    if (!cfg.enabled) return {};

    // Runs one month of an active window.
    auto consume = [](ShockState s) {
        ShockStep out;
        out.multiplier = s.multiplier;
        if (--s.months_remaining == 0) s.multiplier = 1.0;
        out.state = s;
        return out;
    };

    if (state.active() && cfg.suppress_while_active) return consume(state);

    const double u = rng.uniform();
    if (gompertz_pdf(static_cast<double>(t_months), cfg) > u) {
        const auto alpha = rng.uniform_int(cfg.alpha_low, cfg.alpha_high);
        // The trigger month is the first month of the window.
        ShockStep out = consume({cfg.duration_months, static_cast<double>(alpha)});
        out.triggered = true;
        return out;
    }
    if (state.active()) return consume(state);
    return {};
}

} // namespace roadsv
