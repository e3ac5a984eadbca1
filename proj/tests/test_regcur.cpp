#include <doctest.h>

#include <cmath>
#include <random>

#include "backflow/dynamics.hpp"
#include "backflow/regcur.hpp"
#include "test_util.hpp"

using namespace backflow;

namespace {

double reg_norm(const Regulator& r) {
    const double c2 = r.norm_constant * r.norm_constant;
    return c2 * profile_norm_integral(r.profile, [](double) { return 1.0; });
}

double reg_pn(const Regulator& r, int n) {
    const double c2 = r.norm_constant * r.norm_constant;
    return c2 * profile_norm_integral(r.profile, [n](double p) { return std::pow(p, n); });
}

}  // namespace

TEST_CASE("Gaussian regulator: exact normalization and moment scaling") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const Regulator r = gaussian_regulator(sigma, Units{});
        CHECK(std::abs(reg_norm(r) - 1.0) < 1e-10);
        CHECK(r.alpha_effective == doctest::Approx(std::sqrt(32.0 * M_PI)));
        // <p> = 4 / sigma and <p^2> = 8 pi / sigma^2 in natural units
        CHECK(std::abs(reg_pn(r, 1) - 4.0 / sigma) < 1e-8 / sigma);
        CHECK(std::abs(reg_pn(r, 2) - 8.0 * M_PI / (sigma * sigma)) <
              1e-8 / (sigma * sigma));
    }
    CHECK_THROWS_AS(gaussian_regulator(0.0, Units{}), std::invalid_argument);
}

TEST_CASE("closed-form spectrum for the exp(-p^2)-shaped regulator") {
    const Regulator r = make_regulator(GaussianF{1.0}, 1.0, Units{});
    CHECK(std::abs(reg_pn(r, 1) - 0.5 * std::sqrt(2.0 / M_PI)) < 1e-10);
    CHECK(std::abs(std::sqrt(reg_pn(r, 2)) - 0.5) < 1e-10);

    const RegSpectrum spec = reg_spectrum(r, Units{});
    CHECK(std::abs(spec.lambda_plus - 0.44947) < 1e-5);
    CHECK(std::abs(spec.lambda_minus + 0.05053) < 1e-5);
    // trace of the rank-2 block
    CHECK(std::abs(spec.lambda_plus + spec.lambda_minus - reg_pn(r, 1)) < 1e-10);
    // eigenstates are unit-normalized and orthogonal
    CHECK(std::abs(state_norm_squared(spec.phi_plus) - 1.0) < 1e-10);
    CHECK(std::abs(state_norm_squared(spec.phi_minus) - 1.0) < 1e-10);
    const cplx overlap = two_profile_integral(
        spec.phi_plus.profile, spec.phi_minus.profile, [&](double p) -> cplx {
            return std::conj(state_value(spec.phi_plus, p)) *
                   state_value(spec.phi_minus, p) /
                   (std::conj(profile_value(spec.phi_plus.profile, p)) *
                    profile_value(spec.phi_minus.profile, p));
        });
    CHECK(std::abs(overlap) < 1e-10);
}

TEST_CASE("standard regulator eigenvalues scale as 1/sigma^2") {
    const double l1 = reg_spectrum(gaussian_regulator(1.0, Units{}), Units{}).lambda_minus;
    const double l2 = reg_spectrum(gaussian_regulator(2.0, Units{}), Units{}).lambda_minus;
    CHECK(std::abs(l1 - (4.0 - std::sqrt(8.0 * M_PI)) / 2.0) < 1e-9);
    CHECK(std::abs(l2 - l1 / 4.0) < 1e-9);
}

TEST_CASE("discretized regularized current has exactly two nonzero eigenvalues") {
    for (int n : {128, 256, 512}) {
        const Regulator r = make_regulator(GaussianF{1.0}, 1.0, Units{});
        const HalfLineGrid grid = build_grid(n, 1.0);
        const HermitianOperator op = reg_matrix(r, grid, Units{});
        const SpectrumResult spec = eigendecompose(op);
        const double thr = 1e-10 * std::max(std::abs(spec.eigenvalues(0)),
                                            std::abs(spec.eigenvalues(n - 1)));
        int nonzero = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(spec.eigenvalues(i)) > thr) ++nonzero;
        CHECK(nonzero == 2);

        const RegSpectrum cf = reg_spectrum(r, Units{});
        CHECK(std::abs(spec.eigenvalues(0) - cf.lambda_minus) <=
              1e-8 * std::abs(cf.lambda_minus));
        CHECK(std::abs(spec.eigenvalues(n - 1) - cf.lambda_plus) <=
              1e-8 * cf.lambda_plus);
    }
}

TEST_CASE("closed-form eigenstates solve the grid eigenproblem") {
    const Regulator r = make_regulator(GaussianF{1.0}, 1.0, Units{});
    const HalfLineGrid grid = build_grid(256, 1.0);
    const HermitianOperator op = reg_matrix(r, grid, Units{});
    const RegSpectrum cf = reg_spectrum(r, Units{});
    for (const auto& [state, lam] :
         {std::pair{&cf.phi_minus, cf.lambda_minus}, std::pair{&cf.phi_plus, cf.lambda_plus}}) {
        Eigen::VectorXcd v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            v(i) = state_value(*state, grid.nodes[i]) * std::sqrt(grid.weights[i]);
        const double vnorm = v.norm();
        const double resid = (op.entries * v - lam * v).norm() / vnorm;
        CHECK(resid < 1e-8);
    }
}

TEST_CASE("rank-2 structure is independent of the regulator shape") {
    std::mt19937_64 rng(2718);
    GridSampled mix;
    mix.grid = build_grid(256, 1.0);
    mix.values.resize(mix.grid.size());
    for (std::size_t i = 0; i < mix.grid.size(); ++i) {
        const double p = mix.grid.nodes[i];
        mix.values[i] = std::exp(-0.8 * (p - 0.4) * (p - 0.4)) +
                        0.6 * std::exp(-2.0 * (p - 1.5) * (p - 1.5));
    }
    const Regulator r = make_regulator(mix, 0.7, Units{});
    const HermitianOperator op = reg_matrix(r, mix.grid, Units{});
    const SpectrumResult spec = eigendecompose(op);
    const auto n = spec.eigenvalues.size();
    const double thr = 1e-10 * std::max(std::abs(spec.eigenvalues(0)),
                                        std::abs(spec.eigenvalues(n - 1)));
    int nonzero = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(spec.eigenvalues(i)) > thr) ++nonzero;
    CHECK(nonzero == 2);
    const RegSpectrum cf = reg_spectrum(r, Units{});
    CHECK(std::abs(spec.eigenvalues(0) - cf.lambda_minus) <=
          1e-8 * std::abs(cf.lambda_minus));
}

TEST_CASE("expectation of the interpolated operator") {
    const Regulator r = make_regulator(GaussianF{1.0}, 1.0, Units{});
    const RegSpectrum cf = reg_spectrum(r, Units{});

    // g = f at the eigenstate a gives lambda_minus exactly
    const double E = jreg_expectation(cf.phi_minus, r.profile, 1.0, Units{});
    CHECK(std::abs(E - cf.lambda_minus) < 1e-10);

    // zeros of the two factors
    const auto G = [&](int n) {
        return r.norm_constant *
               two_profile_integral(r.profile, cf.phi_minus.profile, [n](double p) -> cplx {
                   return {std::pow(p, n), 0.0};
               });
    };
    const cplx g0 = G(0), g1 = G(1), g2 = G(2);
    MomentumState psi = cf.phi_minus;
    psi.a = g2 / g1;  // first factor vanishes
    psi = normalize(std::move(psi));
    CHECK(std::abs(jreg_expectation(psi, r.profile, 1.0, Units{})) < 1e-10);
    psi.a = g1 / g0;  // second factor vanishes
    psi = normalize(std::move(psi));
    CHECK(std::abs(jreg_expectation(psi, r.profile, 1.0, Units{})) < 1e-10);

    // large |a|: the sign is set by the quadratic coefficient analog
    const double A_analog = 2.0 * std::real(g0 * std::conj(g1));
    psi.a = {1e4, 0.0};
    psi = normalize(std::move(psi));
    const double Efar = jreg_expectation(psi, r.profile, 1.0, Units{});
    CHECK(Efar * A_analog > 0.0);
}

TEST_CASE("limit procedure: tracked a recovers the family current") {
    const LimitTrace tr = limit_procedure(GaussianF{1.0}, 12, ARule::Tracked, Units{});
    REQUIRE(tr.steps.size() == 12);
    CHECK_FALSE(tr.degenerate);
    const auto& last = tr.steps.back();
    CHECK(last.expectation < 0.0);
    CHECK(std::abs(last.a.real() - (M_PI + 2.0) / (4.0 * std::sqrt(M_PI))) < 1e-5);
    CHECK(std::abs(tr.limit_current + 0.0147891946) < 1e-7);
    CHECK(tr.final_relative_deviation < 1e-3);
    // raw and sigma-rescaled bookkeeping agree identically
    for (const auto& st : tr.steps)
        CHECK(std::abs(st.expectation - st.rescaled_expectation) <=
              1e-12 * (std::abs(st.expectation) + 1e-30));
    // the independent dynamical oracle
    MomentumState fam;
    fam.profile = GaussianF{1.0};
    fam.a = tr.steps.back().a;
    fam.family_factor = true;
    fam = normalize(std::move(fam));
    const double J0 = current_at_origin(fam, 0.0).J;
    CHECK(std::abs(last.expectation - J0) <= 1e-3 * std::abs(J0));
}

TEST_CASE("limit procedure: fixed a loses the backflow for a Gaussian profile") {
    const LimitTrace tr = limit_procedure(GaussianF{1.0}, 12, ARule::Fixed, Units{});
    CHECK(tr.steps.front().expectation < 0.0);  // starts as the negative eigenstate
    CHECK(tr.steps.back().expectation >= 0.0);  // ends with positive current
    CHECK(tr.limit_current > 0.0);
    // the fixed a is the eigenstate value sqrt(<p^2>_f) = 1/2 for gamma0 = 1
    CHECK(std::abs(tr.steps.back().a.real() - 0.5) < 1e-10);
    // step 0 is the eigenstate: expectation = lambda_minus of that regulator
    const double sig0 = tr.steps.front().sigma;
    const Regulator r0 = gaussian_regulator(sig0, Units{});
    const RegSpectrum cf = reg_spectrum(r0, Units{});
    CHECK(std::abs(tr.steps.front().expectation - cf.lambda_minus) < 1e-9);
}

TEST_CASE("limit procedure: single step reproduces the plain expectation") {
    const LimitTrace tr = limit_procedure(GaussianF{1.0}, 1, ARule::Fixed, Units{});
    REQUIRE(tr.steps.size() == 1);
    MomentumState psi;
    psi.profile = GaussianF{1.0};
    psi.a = tr.steps[0].a;
    psi.family_factor = true;
    psi = normalize(std::move(psi));
    const Regulator g = gaussian_regulator(tr.steps[0].sigma, Units{});
    const double E = jreg_expectation(psi, g.profile, tr.steps[0].sigma, Units{});
    CHECK(std::abs(E - tr.steps[0].expectation) <= 1e-12 * std::abs(E));
}

TEST_CASE("mixed brackets converge to the profile moments") {
    // sigma^{-1/2} <g_sigma | p^n | f> -> f_n as sigma -> 0
    const MomentumProfile f = GaussianF{1.0};
    const double fn = profile_norm_integral(f, [](double) { return 1.0; });
    const double cf = 1.0 / std::sqrt(fn);
    const MomentTriple m = moments(f, Units{});
    const double sigma = 0.02;
    const Regulator g = gaussian_regulator(sigma, Units{});
    for (int n = 0; n < 3; ++n) {
        const cplx Gn = g.norm_constant * cf *
                        two_profile_integral(g.profile, f, [n](double p) -> cplx {
                            return {std::pow(p, n), 0.0};
                        });
        const cplx want = m[n] * cf;  // moments of the unit-normalized profile
        CHECK(std::abs(Gn / std::sqrt(sigma) - want) <= 1e-3 * std::abs(want));
    }
}

TEST_CASE("degenerate limit: a profile with identically zero current") {
    // Build f = e^{-p^2} + b e^{-2p^2} + c e^{-3p^2} with f_0 = f_1 = 0;
    // then A = B = C = 0 and the limiting current vanishes for every a.
    const double m0[3] = {0.5 * std::sqrt(M_PI), 0.5 * std::sqrt(M_PI / 2.0),
                          0.5 * std::sqrt(M_PI / 3.0)};
    const double m1[3] = {0.5, 0.25, 1.0 / 6.0};
    const double det = m0[1] * m1[2] - m0[2] * m1[1];
    const double b = (-m0[0] * m1[2] + m0[2] * m1[0]) / det;
    const double c = (-m0[1] * m1[0] + m0[0] * m1[1]) / det;

    GridSampled g;
    g.grid = build_grid(512, 1.0);
    g.values.resize(g.grid.size());
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        const double p = g.grid.nodes[i];
        g.values[i] = std::exp(-p * p) + b * std::exp(-2.0 * p * p) +
                      c * std::exp(-3.0 * p * p);
    }
    const MomentTriple mm = moments(MomentumProfile{g}, Units{});
    REQUIRE(std::abs(mm.f0) < 1e-10);
    REQUIRE(std::abs(mm.f1) < 1e-10);

    const LimitTrace tr = limit_procedure(g, 6, ARule::Tracked, Units{});
    CHECK(tr.degenerate);
}
