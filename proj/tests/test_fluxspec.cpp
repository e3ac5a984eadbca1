#include <doctest.h>

#include <cmath>
#include <random>

#include "backflow/dynamics.hpp"
#include "backflow/errors.hpp"
#include "backflow/fluxspec.hpp"
#include "test_util.hpp"

using namespace backflow;

namespace {

MomentumState sampled_gaussian_family(const HalfLineGrid& grid, double a) {
    GridSampled g;
    g.grid = grid;
    g.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid.nodes[i];
        g.values[i] = (a - p) * std::exp(-p * p);
    }
    MomentumState s;
    s.profile = std::move(g);
    s.family_factor = false;
    return normalize(std::move(s));
}

}  // namespace

TEST_CASE("flux matrix is Hermitian and vanishes on an empty window") {
    const HalfLineGrid grid = build_grid(64, 1.0);
    const HermitianOperator op = flux_matrix(grid, -0.4, 1.1, Units{});
    CHECK((op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    const HermitianOperator zero = flux_matrix(grid, 0.7, 0.7, Units{});
    CHECK(zero.entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix expectation against the time-quadrature flux") {
    const HalfLineGrid grid = build_grid(400, 1.0);
    const MomentumState s = sampled_gaussian_family(grid, 0.684);
    const double t1 = -0.78, t2 = 0.78;
    const HermitianOperator op = flux_matrix(grid, t1, t2, s.units);

    Eigen::VectorXcd v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v(i) = state_value(s, grid.nodes[i]) * std::sqrt(grid.weights[i]);
    const double quad_form = std::real(cplx(v.adjoint() * (op.entries * v)));
    const double time_quad = flux(s, t1, t2).flux;
    CHECK(std::abs(quad_form - time_quad) < 1e-4);
    CHECK(quad_form < 0.0);
}

TEST_CASE("eigendecompose: closed-form 2x2 and diagonal cases") {
    HermitianOperator op;
    op.grid = build_grid(2, 1.0);
    op.entries.resize(2, 2);
    op.entries << 0.0, 1.0, 1.0, 0.0;
    const SpectrumResult r = eigendecompose(op);
    CHECK(std::abs(r.eigenvalues(0) + 1.0) < 1e-14);
    CHECK(std::abs(r.eigenvalues(1) - 1.0) < 1e-14);

    HermitianOperator d;
    d.grid = build_grid(4, 1.0);
    d.entries = Eigen::MatrixXcd::Zero(4, 4);
    const double diag[4] = {0.3, -2.0, 1.5, 0.1};
    for (int i = 0; i < 4; ++i) d.entries(i, i) = diag[i];
    const SpectrumResult rd = eigendecompose(d);
    CHECK(rd.eigenvalues(0) == doctest::Approx(-2.0));
    CHECK(rd.eigenvalues(3) == doctest::Approx(1.5));
}

TEST_CASE("eigendecompose: residuals, orthonormality, trace on random input") {
    std::mt19937_64 rng(99);
    const int n = 50;
    HermitianOperator op;
    op.grid = build_grid(n, 1.0);
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = testutil::crand(rng);
    op.entries = 0.5 * (A + A.adjoint());

    const SpectrumResult r = eigendecompose(op);
    const double scale = op.entries.norm();
    CHECK(r.residuals.maxCoeff() < 1e-10 * scale);
    CHECK((r.eigenvectors.adjoint() * r.eigenvectors - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK(std::abs(r.eigenvalues.sum() - std::real(op.entries.trace())) < 1e-10 * scale);
    for (int i = 0; i + 1 < n; ++i) CHECK(r.eigenvalues(i) <= r.eigenvalues(i + 1));
}

TEST_CASE("eigendecompose rejects non-finite input") {
    HermitianOperator op;
    op.grid = build_grid(8, 1.0);
    op.entries = Eigen::MatrixXcd::Zero(8, 8);
    op.entries(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigendecompose(op), solver_error);
}

TEST_CASE("flux-bound estimates grow monotonically and are window invariant") {
    CHECK_THROWS_AS(bracken_melloy_bound(32, 4.0, 0.0, 1.0), std::invalid_argument);

    const BmBoundResult r64 = bracken_melloy_bound(64, 4.0, 0.0, 1.0);
    const BmBoundResult r128 = bracken_melloy_bound(128, 4.0, 0.0, 1.0);
    const BmBoundResult r256 = bracken_melloy_bound(256, 4.0, 0.0, 1.0);
    CHECK(r64.estimate > 0.02);
    CHECK(r64.estimate < r128.estimate);
    CHECK(r128.estimate < r256.estimate);
    CHECK(r256.estimate < kBrackenMelloyConstant);
    CHECK(std::abs(r128.estimate - 0.0337325) < 2e-4);
    CHECK(std::abs(r256.estimate - 0.0351163) < 2e-4);

    const BmBoundResult rw = bracken_melloy_bound(128, 4.0, 0.0, 10.0);
    CHECK(std::abs(rw.estimate - r128.estimate) < 1e-3);

    // the dimensionless eigenproblem is the same; the exported states
    // differ by the momentum rescaling of the window
    const double p128 = profile_pmax(r128.state.profile);
    const double pw = profile_pmax(rw.state.profile);
    CHECK(std::abs(pw - p128 / std::sqrt(10.0)) < 1e-9 * p128);
}

TEST_CASE("maximizing state round trip through the time quadrature") {
    const BmBoundResult r = bracken_melloy_bound(128, 4.0, 0.0, 1.0);
    CHECK(std::abs(state_norm_squared(r.state) - 1.0) < 1e-10);
    const double F = flux(r.state, 0.0, 1.0).flux;
    CHECK(std::abs(F + r.estimate) < 1e-6);
    CHECK(current_at_origin(r.state, 0.5).J < 0.0);
}

TEST_CASE("Rayleigh coherence: no state beats the lowest eigenvalue") {
    std::mt19937_64 rng(321);
    const HalfLineGrid grid = build_grid(128, 1.0);
    const HermitianOperator op = flux_matrix(grid, 0.0, 1.0, Units{});
    const SpectrumResult spec = eigendecompose(op);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXcd v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v(i) = testutil::crand(rng);
        v.normalize();
        const double q = std::real(cplx(v.adjoint() * (op.entries * v)));
        CHECK(q >= spec.eigenvalues(0) - 1e-10 * op.entries.norm());
    }
}

TEST_CASE("smeared current respects the closed-form lower bound") {
    std::mt19937_64 rng(4242);
    // a plain packet has positive smeared current
    MomentumState packet;
    packet.profile = testutil::random_mixture_profile(rng, 256, true);
    packet.family_factor = false;
    packet = normalize(std::move(packet));
    const auto [plhs, pbound] = eveson_quadratic_check(packet, 1.0);
    CHECK(plhs > 0.0);
    CHECK(pbound < 0.0);

    // the backflow state dips negative for small sigma but stays above the bound
    const HalfLineGrid grid = build_grid(500, 1.0);
    const MomentumState bf = sampled_gaussian_family(grid, 0.684);
    bool dipped = false;
    for (double sigma : {0.3, 0.5, 1.0, 2.0}) {
        const auto [lhs, bound] = eveson_quadratic_check(bf, sigma);
        CHECK(lhs >= bound - 1e-8);
        if (lhs < 0.0) dipped = true;
    }
    CHECK(dipped);

    // random states and widths
    for (int trial = 0; trial < 30; ++trial) {
        MomentumState s;
        s.profile = testutil::random_mixture_profile(rng, 256);
        s.family_factor = trial % 2 == 0;
        s.a = testutil::crand(rng, 1.2);
        s = normalize(std::move(s));
        for (double sigma : {0.1, 1.0, 10.0}) {
            const auto [lhs, bound] = eveson_quadratic_check(s, sigma);
            CHECK(lhs >= bound - 1e-8);
        }
    }
}
