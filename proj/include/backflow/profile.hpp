#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "backflow/grid.hpp"
#include "backflow/quadrature.hpp"

namespace backflow {

using cplx = std::complex<double>;

/// f(p) = exp(-gamma0^2 p^2).
struct GaussianF {
    double gamma0 = 1.0;
};

/// The two-exponential state 18/sqrt(35 K^3) p (e^{-p/K} - e^{-p/2K}/6),
/// prefactor included so the printed constant is testable (unit norm).
struct BrackenMelloyState {
    double K = 1.0;
};

/// (sqrt(3) p - p0) on (0, p0], identically zero beyond p0.
/// The normalization constant is left to normalize().
struct EvesonTruncated {
    double p0 = 1.0;
};

/// Values sampled on a half-line quadrature grid. Linear interpolation
/// between nodes, constant below the first node, zero beyond the last.
/// Integrals against this profile use the grid's own weights.
struct GridSampled {
    HalfLineGrid grid;
    std::vector<cplx> values;
};

using MomentumProfile = std::variant<GaussianF, BrackenMelloyState, EvesonTruncated, GridSampled>;

/// Raw profile value f(p) (no normalization applied).
cplx profile_value(const MomentumProfile& f, double p);

/// Momentum beyond which the profile is negligible (or exactly zero).
double profile_pmax(const MomentumProfile& f);

bool profile_is_grid(const MomentumProfile& f);

/// True if every sample/coefficient is real and >= 0 (within roundoff).
bool profile_real_nonnegative(const MomentumProfile& f);

/// integral of w(p) f(p) dp over (0, inf) for smooth non-oscillatory w.
/// Grid profiles are summed with their own quadrature weights; analytic
/// profiles are integrated adaptively up to profile_pmax.
cplx profile_integral(const MomentumProfile& f, const std::function<cplx(double)>& w,
                      double abs_tol = 1e-13);

/// integral of conj(g(p)) w(p) f(p) dp; if either profile is grid-sampled
/// its nodes drive the sum, otherwise adaptive up to the smaller pmax.
cplx two_profile_integral(const MomentumProfile& g, const MomentumProfile& f,
                          const std::function<cplx(double)>& w, double abs_tol = 1e-13);

/// integral of w(p) |f(p)|^2 dp for real nonnegative weight w.
double profile_norm_integral(const MomentumProfile& f, const std::function<double(double)>& w,
                             double abs_tol = 1e-13);

}  // namespace backflow
