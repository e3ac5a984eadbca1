#include "backflow/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace backflow {

namespace {

cplx grid_value(const GridSampled& g, double p) {
    const auto& x = g.grid.nodes;
    if (x.empty() || p <= 0.0 || p > x.back()) return {0.0, 0.0};
    if (p <= x.front()) return g.values.front();
    const auto it = std::upper_bound(x.begin(), x.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double t = (p - x[i - 1]) / (x[i] - x[i - 1]);
    return g.values[i - 1] * (1.0 - t) + g.values[i] * t;
}

}  // namespace

cplx profile_value(const MomentumProfile& f, double p) {
    if (p <= 0.0) return {0.0, 0.0};
    return std::visit(
        [p](const auto& prof) -> cplx {
            using T = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<T, GaussianF>) {
                const double g2 = prof.gamma0 * prof.gamma0;
                return {std::exp(-g2 * p * p), 0.0};
            } else if constexpr (std::is_same_v<T, BrackenMelloyState>) {
                const double K = prof.K;
                const double pref = 18.0 / std::sqrt(35.0 * K * K * K);
                return {pref * p * (std::exp(-p / K) - std::exp(-p / (2.0 * K)) / 6.0), 0.0};
            } else if constexpr (std::is_same_v<T, EvesonTruncated>) {
                if (p > prof.p0) return {0.0, 0.0};
                return {std::sqrt(3.0) * p - prof.p0, 0.0};
            } else {
                return grid_value(prof, p);
            }
        },
        f);
}

double profile_pmax(const MomentumProfile& f) {
    return std::visit(
        [](const auto& prof) -> double {
            using T = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<T, GaussianF>) {
                return 7.0 / prof.gamma0;
            } else if constexpr (std::is_same_v<T, BrackenMelloyState>) {
                return 60.0 * prof.K;
            } else if constexpr (std::is_same_v<T, EvesonTruncated>) {
                return prof.p0;
            } else {
                return prof.grid.nodes.empty() ? 0.0 : prof.grid.nodes.back();
            }
        },
        f);
}

bool profile_is_grid(const MomentumProfile& f) {
    return std::holds_alternative<GridSampled>(f);
}

bool profile_real_nonnegative(const MomentumProfile& f) {
    if (const auto* g = std::get_if<GridSampled>(&f)) {
        for (const auto& v : g->values)
            if (std::abs(v.imag()) > 1e-14 * (1.0 + std::abs(v.real())) || v.real() < -1e-14)
                return false;
        return true;
    }
    if (std::holds_alternative<GaussianF>(f)) return true;
    return false;  // the two-exponential and truncated-linear profiles change sign
}

cplx profile_integral(const MomentumProfile& f, const std::function<cplx(double)>& w,
                      double abs_tol) {
    if (const auto* g = std::get_if<GridSampled>(&f)) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < g->grid.size(); ++i)
            s += g->grid.weights[i] * w(g->grid.nodes[i]) * g->values[i];
        return s;
    }
    const double pmax = profile_pmax(f);
    auto integrand = [&](double p) { return w(p) * profile_value(f, p); };
    return integrate_adaptive(integrand, 0.0, pmax, abs_tol).value;
}

cplx two_profile_integral(const MomentumProfile& g, const MomentumProfile& f,
                          const std::function<cplx(double)>& w, double abs_tol) {
    if (const auto* gg = std::get_if<GridSampled>(&g)) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < gg->grid.size(); ++i) {
            const double p = gg->grid.nodes[i];
            s += gg->grid.weights[i] * std::conj(gg->values[i]) * w(p) * profile_value(f, p);
        }
        return s;
    }
    if (profile_is_grid(f)) {
        const auto& ff = std::get<GridSampled>(f);
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < ff.grid.size(); ++i) {
            const double p = ff.grid.nodes[i];
            s += ff.grid.weights[i] * std::conj(profile_value(g, p)) * w(p) * ff.values[i];
        }
        return s;
    }
    const double pmax = std::min(profile_pmax(g), profile_pmax(f));
    auto integrand = [&](double p) {
        return std::conj(profile_value(g, p)) * w(p) * profile_value(f, p);
    };
    return integrate_adaptive(integrand, 0.0, pmax, abs_tol).value;
}

double profile_norm_integral(const MomentumProfile& f, const std::function<double(double)>& w,
                             double abs_tol) {
    if (const auto* g = std::get_if<GridSampled>(&f)) {
        double s = 0.0;
        for (std::size_t i = 0; i < g->grid.size(); ++i)
            s += g->grid.weights[i] * w(g->grid.nodes[i]) * std::norm(g->values[i]);
        return s;
    }
    const double pmax = profile_pmax(f);
    auto integrand = [&](double p) -> cplx {
        return {w(p) * std::norm(profile_value(f, p)), 0.0};
    };
    return integrate_adaptive(integrand, 0.0, pmax, abs_tol).value.real();
}

}  // namespace backflow
