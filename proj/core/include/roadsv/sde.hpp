#pragma once

#include "roadsv/rng.hpp"

namespace roadsv {

/// Square-root (CIR) variance dynamics dv = kappa (theta - v) dt + xi sqrt(v) dW.
struct CirParams {
    double kappa = 0.0; // per year
    double theta = 0.0; // long-run variance
    double xi = 0.0;    // vol of vol
    double v0 = 0.0;

    /// xi^2 < 2 kappa theta. Failing it is not fatal: the step truncates at zero.
    bool satisfies_feller() const noexcept { return xi * xi < 2.0 * kappa * theta; }
    void validate() const;
};

/// Full-truncation Euler step: with v+ = max(v, 0),
/// max(v + kappa (theta - v+) dt + xi sqrt(v+) sqrt(dt) z, 0).
double cir_step(double v, double dt, const CirParams& params, double z_v) noexcept;

struct NormalPair {
    double z_c = 0.0; // drives the rate
    double z_v = 0.0; // drives the variance
};

/// Two standard normals with correlation rho. Draws z_c first, then an
/// independent z_perp; z_v = rho z_c + sqrt(1 - rho^2) z_perp.
NormalPair correlated_pair(RngStream& rng, double rho) noexcept;

/// Randomly triggered periods of accelerated reduction. While a shock is
/// active the reduction rate is multiplied by an integer alpha in
/// [alpha_low, alpha_high] for `duration_months` months.
struct GompertzShockConfig {
    double T = 6.0; // expected number of shocks over the density's span
    double b = 0.02;
    double eta = 0.3;
    int duration_months = 36;
    int alpha_low = 2;
    int alpha_high = 5;
    bool enabled = false;
    /// When false, triggers are evaluated every month even during an active
    /// shock (a new trigger restarts the window). Used to count raw triggers.
    bool suppress_while_active = true;

    void validate() const;

    /// Defaults with shocks switched on.
    static GompertzShockConfig standard();
    /// Standard with the alternative shape b = 0.03, eta = 0.2.
    static GompertzShockConfig inline_variant();
};

/// b eta e^eta e^(b t / T) exp(-eta e^(b t / T)), t in months.
double gompertz_pdf(double t_months, const GompertzShockConfig& cfg) noexcept;

/// Month at which gompertz_pdf peaks: (T / b) ln(1 / eta); 0 when eta >= 1.
double gompertz_peak_month(const GompertzShockConfig& cfg) noexcept;

struct ShockState {
    int months_remaining = 0; // months still to run after the current one
    double multiplier = 1.0;

    bool active() const noexcept { return months_remaining > 0; }
};

struct ShockStep {
    ShockState state;
    double multiplier = 1.0; // G_t for this month
    bool triggered = false;
};

/// Advances the shock scheduler by one month.
///
/// Disabled: returns 1 and draws nothing. Active (and suppression on): returns
/// the running alpha without drawing. Otherwise draws u ~ U[0,1); if
/// gompertz_pdf(t) > u, draws alpha and starts a window of `duration_months`
/// months that includes the current one.
ShockStep shock_step(const ShockState& state, int t_months, RngStream& rng,
                     const GompertzShockConfig& cfg) noexcept;

} // namespace roadsv
