#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "backflow/grid.hpp"
#include "test_util.hpp"

using namespace backflow;

namespace {
double quad_sum(const HalfLineGrid& g, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
    return s;
}
}  // namespace

TEST_CASE("build_grid rejects bad arguments") {
    CHECK_THROWS_AS(build_grid(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(64, -2.0), std::invalid_argument);
}

TEST_CASE("grid structure invariants") {
    for (auto scheme : {GridScheme::MappedGauss, GridScheme::TruncatedUniform}) {
        const HalfLineGrid g = build_grid(97, 2.5, scheme);
        REQUIRE(g.size() == 97);
        CHECK(g.nodes.front() > 0.0);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);
        for (double w : g.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("mapped grid reproduces Gaussian half-line integrals") {
    const HalfLineGrid g = build_grid(64, 1.0);
    const double i0 = quad_sum(g, [](double p) { return std::exp(-2.0 * p * p); });
    CHECK(std::abs(i0 - 0.5 * std::sqrt(0.5 * M_PI)) < 1e-10);

    const double iz = quad_sum(g, [](double) { return 0.0; });
    CHECK(iz == 0.0);

    const double i1 = quad_sum(g, [](double p) { return p * std::exp(-2.0 * p * p); });
    CHECK(std::abs(i1 - 0.25) < 1e-10);
}

TEST_CASE("quadrature oracle: random Gaussian-polynomial combinations") {
    std::mt19937_64 rng(12345);
    const HalfLineGrid g = build_grid(256, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double exact = 0.0;
        std::vector<std::array<double, 3>> terms;  // {coef, power, alpha}
        const int nterms = 1 + static_cast<int>(testutil::urand(rng, 0.0, 2.999));
        for (int k = 0; k < nterms; ++k) {
            const double c = testutil::urand(rng, -2.0, 2.0);
            const int n = static_cast<int>(testutil::urand(rng, 0.0, 4.999));
            const double al = testutil::urand(rng, 0.5, 3.0);
            terms.push_back({c, static_cast<double>(n), al});
            exact += c * testutil::gaussian_halfline_moment(n, al);
        }
        const double got = quad_sum(g, [&](double p) {
            double v = 0.0;
            for (const auto& t : terms) v += t[0] * std::pow(p, t[1]) * std::exp(-t[2] * p * p);
            return v;
        });
        CHECK(std::abs(got - exact) <= 1e-8 * (std::abs(exact) + 1.0));
    }
}

TEST_CASE("quadrature error decreases with n") {
    const double exact = testutil::gaussian_halfline_moment(3, 1.3);
    auto err = [&](int n) {
        const HalfLineGrid g = build_grid(n, 1.0);
        return std::abs(
            quad_sum(g, [](double p) { return p * p * p * std::exp(-1.3 * p * p); }) - exact);
    };
    const double e16 = err(16), e64 = err(64), e256 = err(256);
    CHECK(e64 < e16);
    CHECK(e256 <= e64);
    CHECK(e256 < 1e-12);
}
