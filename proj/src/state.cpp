#include "backflow/state.hpp"

#include <cmath>

#include "backflow/errors.hpp"

namespace backflow {

cplx state_value(const MomentumState& s, double p) {
    cplx v = profile_value(s.profile, p);
    if (s.family_factor) v *= (s.a - p);
    return s.norm_constant * v;
}

double state_norm_squared(const MomentumState& s) {
    const cplx a = s.a;
    const bool fam = s.family_factor;
    const double raw = profile_norm_integral(
        s.profile, [a, fam](double p) { return fam ? std::norm(a - p) : 1.0; });
    return s.norm_constant * s.norm_constant * raw;
}

MomentumState normalize(MomentumState s) {
    const cplx a = s.a;
    const bool fam = s.family_factor;
    const double raw = profile_norm_integral(
        s.profile, [a, fam](double p) { return fam ? std::norm(a - p) : 1.0; });
    if (!(raw > 0.0) || !std::isfinite(raw))
        throw degenerate_state_error("normalize: profile has zero (or non-finite) norm");
    s.norm_constant = 1.0 / std::sqrt(raw);
    return s;
}

double state_p_moment(const MomentumState& s, int n) {
    const cplx a = s.a;
    const bool fam = s.family_factor;
    const double N2 = s.norm_constant * s.norm_constant;
    return N2 * profile_norm_integral(s.profile, [a, fam, n](double p) {
        double w = std::pow(p, n);
        if (fam) w *= std::norm(a - p);
        return w;
    });
}

MomentTriple moments(const MomentumProfile& f, const Units& units) {
    units.validate();
    const double pref = 1.0 / std::sqrt(2.0 * M_PI * units.hbar);
    MomentTriple m;
    m.f0 = pref * profile_integral(f, [](double) { return cplx{1.0, 0.0}; });
    m.f1 = pref * profile_integral(f, [](double p) { return cplx{p, 0.0}; });
    m.f2 = pref * profile_integral(f, [](double p) { return cplx{p * p, 0.0}; });
    if (const auto* g = std::get_if<GridSampled>(&f)) {
        double peak = 0.0;
        for (const auto& v : g->values) peak = std::max(peak, std::abs(v));
        if (!g->values.empty() && std::abs(g->values.back()) > 1e-8 * peak && peak > 0.0)
            m.tail_warning = true;
    }
    return m;
}

}  // namespace backflow
