#include "backflow/regcur.hpp"

#include <array>
#include <cmath>

#include "backflow/errors.hpp"

namespace backflow {

namespace {

/// <p^n> of the unit-normalized regulator profile.
double reg_p_moment(const Regulator& reg, int n) {
    const double c2 = reg.norm_constant * reg.norm_constant;
    return c2 * profile_norm_integral(reg.profile,
                                      [n](double p) { return std::pow(p, n); });
}

/// Brackets G_n = int conj(g_hat) p^n f dp, n = 0, 1, 2.
std::array<cplx, 3> mixed_brackets(const Regulator& g, const MomentumProfile& f) {
    std::array<cplx, 3> G;
    for (int n = 0; n < 3; ++n) {
        G[n] = g.norm_constant *
               two_profile_integral(g.profile, f, [n](double p) -> cplx {
                   return {std::pow(p, n), 0.0};
               });
    }
    return G;
}

MomentumState family_state(const MomentumProfile& f, cplx a, const Units& units) {
    MomentumState s;
    s.profile = f;
    s.a = a;
    s.family_factor = true;
    s.units = units;
    return normalize(std::move(s));
}

}  // namespace

Regulator gaussian_regulator(double sigma, const Units& units) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_regulator: sigma > 0 required");
    units.validate();
    Regulator r;
    r.sigma = sigma;
    r.units = units;
    r.alpha_effective = std::sqrt(32.0 * M_PI);
    // shape exp(-gamma0^2 p^2) with gamma0 = sigma / (alpha hbar); the
    // prefactor sqrt(sigma / 2 pi hbar) gives unit norm on (0, inf).
    r.profile = GaussianF{sigma / (r.alpha_effective * units.hbar)};
    r.norm_constant = std::sqrt(sigma / (2.0 * M_PI * units.hbar));
    return r;
}

Regulator make_regulator(MomentumProfile profile, double sigma, const Units& units) {
    if (!(sigma > 0.0)) throw std::invalid_argument("make_regulator: sigma > 0 required");
    units.validate();
    Regulator r;
    r.sigma = sigma;
    r.units = units;
    r.profile = std::move(profile);
    const double n2 = profile_norm_integral(r.profile, [](double) { return 1.0; });
    if (!(n2 > 0.0)) throw degenerate_state_error("make_regulator: zero-norm profile");
    r.norm_constant = 1.0 / std::sqrt(n2);
    return r;
}

RegSpectrum reg_spectrum(const Regulator& reg, const Units& units) {
    units.validate();
    const double pm = reg_p_moment(reg, 1);
    const double p2 = reg_p_moment(reg, 2);
    const double rt = std::sqrt(p2);
    const double denom = 2.0 * units.mass * reg.sigma;

    RegSpectrum out;
    out.lambda_plus = (rt + pm) / denom;
    out.lambda_minus = (-rt + pm) / denom;
    out.phi_minus = family_state(reg.profile, cplx{rt, 0.0}, units);
    out.phi_plus = family_state(reg.profile, cplx{-rt, 0.0}, units);
    return out;
}

HermitianOperator reg_matrix(const Regulator& reg, const HalfLineGrid& grid,
                             const Units& units) {
    units.validate();
    const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
    const double denom = 2.0 * units.mass * reg.sigma;

    Eigen::VectorXcd fv(n);
    for (Eigen::Index i = 0; i < n; ++i)
        fv(i) = reg.value(grid.nodes[i]) * std::sqrt(grid.weights[i]);

    HermitianOperator op;
    op.grid = grid;
    op.entries.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = grid.nodes[i];
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double k = grid.nodes[j];
            const cplx K = (p + k) * fv(i) * std::conj(fv(j)) / denom;
            op.entries(i, j) = K;
            op.entries(j, i) = std::conj(K);
        }
    }
    return op;
}

double jreg_expectation(const MomentumState& psi_a, const MomentumProfile& g, double sigma,
                        const Units& units) {
    if (!psi_a.family_factor)
        throw not_applicable_error("jreg_expectation: psi_a must be a family-form state");
    const Regulator gr = make_regulator(g, sigma, units);
    const auto G = mixed_brackets(gr, psi_a.profile);
    const cplx a = psi_a.a;
    const double N2 = psi_a.norm_constant * psi_a.norm_constant;
    return N2 / (units.mass * sigma) *
           std::real(std::conj(a * G[1] - G[2]) * (a * G[0] - G[1]));
}

LimitTrace limit_procedure(const MomentumProfile& f, int steps, ARule rule, const Units& units,
                           double sigma0) {
    if (steps < 1) throw std::invalid_argument("limit_procedure: steps must be >= 1");
    units.validate();

    // Work with the unit-normalized fiducial profile.
    const double fn2 = profile_norm_integral(f, [](double) { return 1.0; });
    if (!(fn2 > 0.0)) throw degenerate_state_error("limit_procedure: zero-norm profile");
    const double cf = 1.0 / std::sqrt(fn2);
    const double p2f =
        cf * cf * profile_norm_integral(f, [](double p) { return p * p; });
    const double a_init = std::sqrt(p2f);
    if (!(sigma0 > 0.0))
        sigma0 = std::sqrt(32.0 * M_PI) * units.hbar / (2.0 * a_init);

    LimitTrace trace;
    cplx a{a_init, 0.0};
    for (int s = 0; s < steps; ++s) {
        const double sig = sigma0 * std::pow(2.0, -s);
        const Regulator g = gaussian_regulator(sig, units);
        auto G = mixed_brackets(g, f);
        for (auto& b : G) b *= cf;  // brackets against the normalized f

        if (rule == ARule::Tracked) {
            const double A = 2.0 * std::real(G[0] * std::conj(G[1]));
            const cplx B = G[0] * std::conj(G[2]) + std::norm(G[1]);
            const double sc = std::max({std::abs(G[0]), std::abs(G[1]), std::abs(G[2])});
            if (A > 1e-13 * sc * sc) a = std::conj(B) / A;
        }

        const double nraw = profile_norm_integral(
            f, [a](double p) { return std::norm(a - p); });
        const double N2 = 1.0 / (cf * cf * nraw);  // normalization over the unit-norm f
        const double E = N2 / (units.mass * sig) *
                         std::real(std::conj(a * G[1] - G[2]) * (a * G[0] - G[1]));

        const double rs = 1.0 / std::sqrt(sig);
        const cplx m0 = G[0] * rs, m1 = G[1] * rs, m2 = G[2] * rs;
        const double Er = N2 / units.mass *
                          std::real(std::conj(a * m1 - m2) * (a * m0 - m1));
        trace.steps.push_back({s, sig, a, E, Er});
    }

    // Reference: the t = 0 current of the limiting family state.
    MomentumState fam;
    fam.profile = f;
    fam.a = a;
    fam.family_factor = true;
    fam.units = units;
    fam = normalize(std::move(fam));
    const MomentTriple m = moments(f, units);
    const double N2f = fam.norm_constant * fam.norm_constant;
    trace.limit_current = N2f / units.mass *
                          std::real((a * m.f0 - m.f1) * std::conj(a * m.f1 - m.f2));

    const double scale = std::max({std::abs(m.f0), std::abs(m.f1), std::abs(m.f2), 1e-300});
    const double current_scale =
        N2f * scale * scale * (1.0 + std::norm(a)) / units.mass;
    trace.degenerate = std::abs(trace.limit_current) < 1e-12 * current_scale;
    const double Elast = trace.steps.back().expectation;
    trace.final_relative_deviation =
        std::abs(Elast - trace.limit_current) /
        std::max(std::abs(trace.limit_current), 1e-300);
    return trace;
}

}  // namespace backflow
