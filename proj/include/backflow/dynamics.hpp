#pragma once

#include <optional>

#include "backflow/state.hpp"

namespace backflow {

/// Bracken-Melloy lower bound on the backflow flux (a pure number).
inline constexpr double kBrackenMelloyConstant = 0.038452;

struct CurrentSample {
    double t = 0.0;
    double J = 0.0;
};

struct Window {
    double t1 = 0.0;
    double t2 = 0.0;
};

/// Probability transported across the origin in a time window, with the
/// negative-window bookkeeping used by the certification pipeline.
struct FluxReport {
    double t1 = 0.0;
    double t2 = 0.0;
    double flux = 0.0;
    bool window_found = false;
    double fraction_of_cbm = 0.0;  // |flux| / c_bm when flux < 0, else 0
};

/// u, v integrals of the freely evolved state at time t and position x:
///   U = int phi(p) exp(i p x / hbar - i p^2 t / (2 m hbar)) dp,
///   V = int p phi(p) (same phase) dp.
/// Grid-sampled profiles are summed on their own nodes; analytic profiles
/// go through the phase-panel oscillatory quadrature. err_out, if given,
/// receives the accumulated error estimate.
std::pair<cplx, cplx> evolved_uv(const MomentumState& s, double t, double x = 0.0,
                                 double* err_out = nullptr);

/// J(t) at the origin, (u v* + u* v) / (4 pi m hbar). Gaussian-family
/// states switch to the closed form beyond 10 natural timescales; the
/// quadrature path throws accuracy_error if its estimated error at the
/// requested t exceeds 1e-6.
CurrentSample current_at_origin(const MomentumState& s, double t);

/// Same, but never taking the closed-form shortcut.
double current_at_origin_quadrature(const MomentumState& s, double t);

/// Closed-form J(t) of the normalized state N (a - p) exp(-gamma0^2 p^2),
/// real a, principal-branch gamma(t) = sqrt(gamma0^2 + i t / (2 m hbar)).
double gaussian_current_closed_form(double a, double gamma0, double t, const Units& units);

/// Closed form extended to complex a (used by the scan over Im a != 0).
double gaussian_current_closed_form_general(cplx a, double gamma0, double t,
                                            const Units& units);

/// 2 m hbar gamma0^2 for Gaussian-family states, 2 m hbar / <p^2> otherwise.
double natural_timescale(const MomentumState& s);

/// The negative lobe of J(t) containing the most negative sampled value
/// over [-horizon, horizon] timescales; roots bisected to 1e-9 of the
/// timescale. Empty when no negative lobe is found.
std::optional<Window> negative_window(const MomentumState& s, double horizon_timescales = 20.0);

/// Adaptive time integral of J over [t1, t2], absolute error <= 1e-6.
/// t1 == t2 gives a zero report; t1 > t2 is an argument error.
FluxReport flux(const MomentumState& s, double t1, double t2);

/// negative_window + flux in one report; window_found=false (flux 0)
/// when there is no negative lobe.
FluxReport flux_over_negative_window(const MomentumState& s);

/// P(t) = integral_{-X}^{0} |psi(x,t)|^2 dx with the truncation X chosen
/// from the state's momentum spread so the omitted tail is negligible.
double probability_left(const MomentumState& s, double t);

/// J(x, t); reduces to current_at_origin at x = 0.
double current_at_x(const MomentumState& s, double x, double t);

}  // namespace backflow
