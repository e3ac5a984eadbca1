#include "backflow/fluxspec.hpp"

#include <cmath>

#include "backflow/errors.hpp"

namespace backflow {

namespace {

/// sin(z)/z with the series branch for small z.
double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    }
    return std::sin(z) / z;
}

}  // namespace

HermitianOperator flux_matrix(const HalfLineGrid& grid, double t1, double t2,
                              const Units& units) {
    if (!(t1 <= t2)) throw std::invalid_argument("flux_matrix: t1 must be <= t2");
    units.validate();
    const double mh = units.mass * units.hbar;
    const double dt = t2 - t1;
    const double tbar = 0.5 * (t1 + t2);
    const Eigen::Index n = static_cast<Eigen::Index>(grid.size());

    HermitianOperator op;
    op.grid = grid;
    op.entries.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double p = grid.nodes[i];
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double k = grid.nodes[j];
            const double om = (p * p - k * k) / (2.0 * mh);
            // int_{t1}^{t2} e^{i om t} dt = dt e^{i om tbar} sinc(om dt / 2)
            const cplx tker = std::polar(dt * sinc(0.5 * om * dt), om * tbar);
            const cplx K = (p + k) / (4.0 * M_PI * mh) * tker;
            const double sw = std::sqrt(grid.weights[i] * grid.weights[j]);
            op.entries(i, j) = sw * K;
            op.entries(j, i) = std::conj(sw * K);
        }
    }
    return op;
}

SpectrumResult eigendecompose(const HermitianOperator& op) {
    const Eigen::Index n = op.dim();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.entries);
    if (es.info() != Eigen::Success)
        throw solver_error("eigendecompose: Hermitian eigensolver did not converge");

    SpectrumResult r;
    r.eigenvalues = es.eigenvalues();
    r.eigenvectors = es.eigenvectors();
    // Fix each eigenvector's phase: largest-magnitude component real positive.
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = std::abs(r.eigenvectors(i, j));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        const cplx z = r.eigenvectors(imax, j);
        if (std::abs(z) > 0.0) r.eigenvectors.col(j) *= std::conj(z) / std::abs(z);
    }
    const Eigen::MatrixXcd resid =
        op.entries * r.eigenvectors - r.eigenvectors * r.eigenvalues.asDiagonal();
    r.residuals = resid.colwise().norm();
    return r;
}

BmBoundResult bracken_melloy_bound(int n, double pmax_scale, double t1, double t2,
                                   const Units& units) {
    if (n < 64) throw std::invalid_argument("bracken_melloy_bound: n must be >= 64");
    if (!(pmax_scale > 0.0)) throw std::invalid_argument("bracken_melloy_bound: pmax_scale > 0");
    if (!(t2 > t1)) throw std::invalid_argument("bracken_melloy_bound: empty window");
    units.validate();

    // Dimensionless problem: momentum u = p sqrt(T / (2 m hbar)), so the
    // kernel phase is (u^2 - v^2); realized as the window (0, 2) at
    // hbar = m = 1 on the u grid.
    const double umax = pmax_scale * std::sqrt(4.0 * M_PI) * std::sqrt(n / 256.0);
    const HalfLineGrid ugrid = build_grid(n, umax, GridScheme::TruncatedUniform);
    const HermitianOperator op = flux_matrix(ugrid, 0.0, 2.0, Units{1.0, 1.0});
    const SpectrumResult spec = eigendecompose(op);

    BmBoundResult out;
    out.umax = umax;
    out.estimate = -spec.eigenvalues(0);

    // Map the eigenvector back to a physical grid state on the window.
    const double T = t2 - t1;
    const double pscale = std::sqrt(2.0 * units.mass * units.hbar / T);
    GridSampled gs;
    gs.grid.scheme = GridScheme::TruncatedUniform;
    gs.grid.map_scale = umax * pscale;
    gs.grid.nodes.resize(n);
    gs.grid.weights.resize(n);
    gs.values.resize(n);
    const double amp = 1.0 / std::sqrt(pscale);  // |phi|^2 dp stays normalized
    for (int i = 0; i < n; ++i) {
        gs.grid.nodes[i] = ugrid.nodes[i] * pscale;
        gs.grid.weights[i] = ugrid.weights[i] * pscale;
        gs.values[i] = spec.eigenvectors(i, 0) / std::sqrt(ugrid.weights[i]) * amp;
    }
    MomentumState st;
    st.profile = std::move(gs);
    st.a = {0.0, 0.0};
    st.family_factor = false;
    st.norm_constant = 1.0;
    st.units = units;
    out.state = normalize(std::move(st));
    return out;
}

std::pair<double, double> eveson_quadratic_check(const MomentumState& s, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("eveson_quadratic_check: sigma > 0");
    const double hbar = s.units.hbar, m = s.units.mass;
    const double bound = -hbar / (32.0 * M_PI * m * sigma * sigma);

    // lhs = (1 / 4 pi m hbar) int int conj(phi(k)) phi(p) (p+k)
    //       exp(-sigma^2 (p-k)^2 / (2 hbar^2)) dp dk
    std::vector<double> nodes, weights;
    std::vector<cplx> vals;
    if (const auto* g = std::get_if<GridSampled>(&s.profile)) {
        nodes = g->grid.nodes;
        weights = g->grid.weights;
    } else {
        const HalfLineGrid grid = build_grid(512, profile_pmax(s.profile) / 6.0);
        nodes = grid.nodes;
        weights = grid.weights;
    }
    vals.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = state_value(s, nodes[i]);

    const double h2 = hbar * hbar;
    double lhs = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double p = nodes[i];
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double k = nodes[j];
            const double gauss = std::exp(-sigma * sigma * (p - k) * (p - k) / (2.0 * h2));
            lhs += weights[i] * weights[j] * (p + k) * gauss *
                   std::real(std::conj(vals[j]) * vals[i]);
        }
    }
    lhs /= 4.0 * M_PI * m * hbar;
    return {lhs, bound};
}

}  // namespace backflow
