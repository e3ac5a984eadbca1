#include "backflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "backflow/errors.hpp"
#include "backflow/quadrature.hpp"

namespace backflow {

namespace {

const double kSqrtPi = std::sqrt(M_PI);

bool has_gaussian_closed_form(const MomentumState& s) {
    return std::holds_alternative<GaussianF>(s.profile) && s.family_factor;
}

/// Closed-form J(t) for the Gaussian family with the state's actual
/// normalization constant (which may differ from the unit-norm one).
double gaussian_state_current(const MomentumState& s, double t) {
    const auto& g = std::get<GaussianF>(s.profile);
    const double g0 = g.gamma0;
    const double mh = s.units.mass * s.units.hbar;
    const cplx gam = std::sqrt(cplx(g0 * g0, t / (2.0 * mh)));
    const double ag6 = std::pow(std::abs(gam), 6);
    const cplx val = gam * (s.a * gam * kSqrtPi - 1.0) *
                     (2.0 * std::conj(s.a) * std::conj(gam) - kSqrtPi);
    const double N2 = s.norm_constant * s.norm_constant;
    return N2 / (16.0 * M_PI * mh * ag6) * std::real(val);
}

std::vector<double> time_edges(double t1, double t2, double tau) {
    std::vector<double> e{t1, t2};
    if (t1 < 0.0 && t2 > 0.0) e.push_back(0.0);
    // Geometric refinement toward t = 0 keeps the adaptive pass cheap on
    // intervals spanning many timescales.
    for (double d = tau; d < std::max(std::abs(t1), std::abs(t2)); d *= 2.0) {
        if (d > t1 && d < t2) e.push_back(d);
        if (-d > t1 && -d < t2) e.push_back(-d);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

}  // namespace

std::pair<cplx, cplx> evolved_uv(const MomentumState& s, double t, double x, double* err_out) {
    const double c2 = t / (2.0 * s.units.mass * s.units.hbar);
    const double c1 = -x / s.units.hbar;
    if (const auto* g = std::get_if<GridSampled>(&s.profile)) {
        cplx u{0.0, 0.0}, v{0.0, 0.0};
        for (std::size_t i = 0; i < g->grid.size(); ++i) {
            const double p = g->grid.nodes[i];
            const double ph = (c2 * p + c1) * p;
            const cplx amp = g->grid.weights[i] * state_value(s, p) *
                             cplx(std::cos(ph), -std::sin(ph));
            u += amp;
            v += p * amp;
        }
        if (err_out) *err_out = 0.0;  // grid-level quadrature, no finer estimate
        return {u, v};
    }
    const double pmax = profile_pmax(s.profile);
    const auto ru = oscillatory_integral([&](double p) { return state_value(s, p); }, 0.0, pmax,
                                         c2, c1, 1e-9);
    const auto rv = oscillatory_integral([&](double p) { return p * state_value(s, p); }, 0.0,
                                         pmax, c2, c1, 1e-9);
    if (err_out) *err_out = ru.error + rv.error;
    return {ru.value, rv.value};
}

double current_at_origin_quadrature(const MomentumState& s, double t) {
    double err = 0.0;
    const auto [u, v] = evolved_uv(s, t, 0.0, &err);
    if (err > 1e-6)
        throw accuracy_error("current_at_origin: oscillatory quadrature too inaccurate", t, err);
    return std::real(u * std::conj(v)) / (2.0 * M_PI * s.units.mass * s.units.hbar);
}

CurrentSample current_at_origin(const MomentumState& s, double t) {
    if (has_gaussian_closed_form(s) && std::abs(t) > 10.0 * natural_timescale(s))
        return {t, gaussian_state_current(s, t)};
    return {t, current_at_origin_quadrature(s, t)};
}

double gaussian_current_closed_form_general(cplx a, double gamma0, double t,
                                            const Units& units) {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("gaussian_current_closed_form: gamma0 > 0");
    units.validate();
    const double mh = units.mass * units.hbar;
    const cplx gam = std::sqrt(cplx(gamma0 * gamma0, t / (2.0 * mh)));
    const double n2inv = std::norm(a) + 1.0 / (4.0 * gamma0 * gamma0) -
                         std::sqrt(2.0 / M_PI) * a.real() / gamma0;
    const double N2 = 2.0 * std::sqrt(2.0 / M_PI) * gamma0 / n2inv;
    const cplx val =
        gam * (a * gam * kSqrtPi - 1.0) * (2.0 * std::conj(a) * std::conj(gam) - kSqrtPi);
    return N2 / (16.0 * M_PI * mh * std::pow(std::abs(gam), 6)) * std::real(val);
}

double gaussian_current_closed_form(double a, double gamma0, double t, const Units& units) {
    return gaussian_current_closed_form_general(cplx{a, 0.0}, gamma0, t, units);
}

double natural_timescale(const MomentumState& s) {
    const double mh = s.units.mass * s.units.hbar;
    if (const auto* g = std::get_if<GaussianF>(&s.profile))
        return 2.0 * mh * g->gamma0 * g->gamma0;
    const double p2 = state_p_moment(s, 2);
    if (!(p2 > 0.0)) throw degenerate_state_error("natural_timescale: <p^2> vanishes");
    return 2.0 * mh / p2;
}

std::optional<Window> negative_window(const MomentumState& s, double horizon_timescales) {
    const double tau = natural_timescale(s);
    const double H = horizon_timescales * tau;
    const bool closed = has_gaussian_closed_form(s);
    auto J = [&](double t) {
        return closed ? gaussian_state_current(s, t) : current_at_origin(s, t).J;
    };

    const int n_coarse = 2001;
    std::vector<double> ts(n_coarse), js(n_coarse);
    int imin = 0;
    for (int i = 0; i < n_coarse; ++i) {
        ts[i] = -H + 2.0 * H * i / (n_coarse - 1);
        js[i] = J(ts[i]);
        if (js[i] < js[imin]) imin = i;
    }
    if (!(js[imin] < 0.0)) return std::nullopt;

    // Resample around the minimum: narrow lobes (well under the coarse
    // spacing) show up for states with a large momentum spread.
    const double lo = ts[std::max(0, imin - 2)], hi = ts[std::min(n_coarse - 1, imin + 2)];
    const int n_fine = 801;
    std::vector<double> fts(n_fine), fjs(n_fine);
    int fmin = 0;
    for (int i = 0; i < n_fine; ++i) {
        fts[i] = lo + (hi - lo) * i / (n_fine - 1);
        fjs[i] = J(fts[i]);
        if (fjs[i] < fjs[fmin]) fmin = i;
    }
    if (!(fjs[fmin] < 0.0)) return std::nullopt;

    // Walk outward to bracket the enclosing sign changes, continuing on
    // the coarse grid (and beyond the horizon if need be).
    auto bracket = [&](int dir) -> std::pair<double, double> {
        int i = fmin;
        while (i + dir >= 0 && i + dir < n_fine) {
            i += dir;
            if (fjs[i] >= 0.0) return {fts[i - dir], fts[i]};
        }
        double t_in = fts[i];
        const double step0 = (hi - lo) / (n_fine - 1);
        double step = step0;
        double t_out = t_in;
        for (int k = 0; k < 400; ++k) {
            t_out += dir * step;
            if (J(t_out) >= 0.0) return {t_in, t_out};
            t_in = t_out;
            step = std::min(step * 1.5, H / 16.0);
        }
        throw accuracy_error("negative_window: no enclosing sign change", t_out, 0.0);
    };
    auto bisect = [&](double t_neg, double t_pos) {
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (t_neg + t_pos);
            if (std::abs(t_pos - t_neg) < 1e-9 * tau) return mid;
            (J(mid) < 0.0 ? t_neg : t_pos) = mid;
        }
        return 0.5 * (t_neg + t_pos);
    };
    auto [ln, lp] = bracket(-1);
    auto [rn, rp] = bracket(+1);
    return Window{bisect(ln, lp), bisect(rn, rp)};
}

FluxReport flux(const MomentumState& s, double t1, double t2) {
    if (t1 > t2) throw std::invalid_argument("flux: t1 must be <= t2");
    FluxReport rep;
    rep.t1 = t1;
    rep.t2 = t2;
    rep.window_found = true;
    if (t1 == t2) return rep;
    const double tau = natural_timescale(s);
    auto f = [&](double t) -> cplx { return {current_at_origin(s, t).J, 0.0}; };
    const auto r = integrate_adaptive(f, time_edges(t1, t2, tau), 5e-7);
    if (r.error > 1e-6)
        throw accuracy_error("flux: time quadrature did not converge", t2, r.error);
    rep.flux = r.value.real();
    if (rep.flux < 0.0) rep.fraction_of_cbm = -rep.flux / kBrackenMelloyConstant;
    return rep;
}

FluxReport flux_over_negative_window(const MomentumState& s) {
    const auto w = negative_window(s);
    if (!w) {
        FluxReport rep;
        rep.window_found = false;
        return rep;
    }
    return flux(s, w->t1, w->t2);
}

double probability_left(const MomentumState& s, double t) {
    const double hbar = s.units.hbar, m = s.units.mass;
    const double p1 = state_p_moment(s, 1);
    const double p2 = state_p_moment(s, 2);
    const double sp = std::sqrt(std::max(p2 - p1 * p1, 1e-12 * p2));
    const double sx = hbar / sp;
    const double X = 40.0 * (sx + (std::abs(p1) + sp) * std::abs(t) / m);

    auto psi_sq = [&](double x) -> cplx {
        const auto [u, v] = evolved_uv(s, t, x);
        (void)v;
        return {std::norm(u) / (2.0 * M_PI * hbar), 0.0};
    };
    std::vector<double> edges{0.0};
    for (double d = sx / 4.0; d < X; d *= 2.0) edges.push_back(-d);
    edges.push_back(-X);
    std::sort(edges.begin(), edges.end());
    const auto r = integrate_adaptive(psi_sq, edges, 5e-7);
    if (r.error > 2e-6)
        throw accuracy_error("probability_left: x quadrature did not converge", t, r.error);
    return r.value.real();
}

double current_at_x(const MomentumState& s, double x, double t) {
    const auto [u, v] = evolved_uv(s, t, x);
    return std::real(u * std::conj(v)) / (2.0 * M_PI * s.units.mass * s.units.hbar);
}

}  // namespace backflow
