#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "backflow/errors.hpp"

namespace backflow {

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;  // accumulated error estimate (absolute)
};

namespace detail {

/// Fixed Gauss-Legendre rules used by the adaptive integrators.
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

template <class F>
std::complex<double> panel_gl(const F& f, double a, double b, int order) {
    const auto& x = gl_nodes(order);
    const auto& w = gl_weights(order);
    const double mid = 0.5 * (a + b), hl = 0.5 * (b - a);
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + hl * x[i]);
    return hl * s;
}

template <class F>
void adapt_rec(const F& f, double a, double b, double tol, int depth, QuadResult& out) {
    const std::complex<double> coarse = panel_gl(f, a, b, 16);
    const std::complex<double> fine = panel_gl(f, a, b, 32);
    const double err = std::abs(fine - coarse);
    if (err <= tol || depth >= 48 || b - a < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
        out.value += fine;
        out.error += err;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt_rec(f, a, mid, 0.5 * tol, depth + 1, out);
    adapt_rec(f, mid, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

/// Adaptive integration of a (complex-valued) integrand over the segments
/// defined by consecutive entries of `edges`. Error is estimated per panel
/// against a doubled-order rule; panels split until the local share of
/// `abs_tol` is met.
template <class F>
QuadResult integrate_adaptive(const F& f, const std::vector<double>& edges, double abs_tol) {
    QuadResult out;
    if (edges.size() < 2) return out;
    const double tol_each = abs_tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        detail::adapt_rec(f, edges[i], edges[i + 1], tol_each, 0, out);
    return out;
}

template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol) {
    return integrate_adaptive(f, std::vector<double>{a, b}, abs_tol);
}

/// Breakpoints for int_a^b g(p) exp(-i (c2 p^2 + c1 p)) dp such that the
/// phase advances by at most ~4*pi per panel. Oscillatory integrands defeat
/// fixed rules; bounding the per-panel phase keeps the embedded GL16/GL32
/// pair honest about its error.
std::vector<double> phase_panels(double a, double b, double c2, double c1,
                                 std::size_t max_panels = 400000);

/// Oscillatory integral  int_a^b g(p) exp(-i (c2 p^2 + c1 p)) dp.
template <class F>
QuadResult oscillatory_integral(const F& g, double a, double b, double c2, double c1,
                                double abs_tol) {
    const auto edges = phase_panels(a, b, c2, c1);
    auto f = [&](double p) {
        const double ph = (c2 * p + c1) * p;
        return g(p) * std::complex<double>(std::cos(ph), -std::sin(ph));
    };
    return integrate_adaptive(f, edges, abs_tol);
}

}  // namespace backflow
