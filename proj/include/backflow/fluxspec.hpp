#pragma once

#include <Eigen/Dense>

#include "backflow/dynamics.hpp"
#include "backflow/state.hpp"

namespace backflow {

/// A Nystrom discretization of an integral-kernel operator on the momentum
/// half-line. entries = sqrt(w_i) K(p_i, p_j) sqrt(w_j), so eigenvalues
/// approximate the operator spectrum and eigenvector components carry a
/// sqrt(w) factor relative to wavefunction samples.
struct HermitianOperator {
    Eigen::MatrixXcd entries;
    HalfLineGrid grid;  // the weight-split record

    Eigen::Index dim() const { return entries.rows(); }
};

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors;  // columns, orthonormal, phase-fixed
    Eigen::VectorXd residuals;      // ||M v - lambda v|| per pair
};

/// Momentum-basis matrix of the flux operator over [t1, t2]:
///   K(p, k) = (p + k) / (4 pi m hbar) * int_{t1}^{t2} exp(i (p^2-k^2) t / (2 m hbar)) dt,
/// the time integral evaluated in closed form (exactly (t2 - t1) on the
/// diagonal; a series branch removes the 0/0 near it).
HermitianOperator flux_matrix(const HalfLineGrid& grid, double t1, double t2,
                              const Units& units);

/// Dense Hermitian eigendecomposition with deterministic ordering
/// (ascending eigenvalue; largest component of each vector rotated to the
/// positive real axis). Throws solver_error on non-convergence.
SpectrumResult eigendecompose(const HermitianOperator& op);

struct BmBoundResult {
    double estimate = 0.0;        // -lambda_min of the discretized flux operator
    MomentumState state;          // the maximizing eigenvector, grid-sampled
    double umax = 0.0;            // dimensionless cutoff actually used
};

/// Nystrom estimate of the Bracken-Melloy constant together with the
/// maximizing state. The eigenproblem is solved once in dimensionless
/// variables (the spectrum is independent of hbar, m and the window), on a
/// uniform grid with cutoff pmax_scale * sqrt(4 pi) * sqrt(n / 256); the
/// sqrt(n) growth keeps the kernel's phase resolution fixed while the
/// truncation error shrinks. The window only sets the momentum scale of
/// the exported state.
BmBoundResult bracken_melloy_bound(int n, double pmax_scale, double t1, double t2,
                                   const Units& units = {});

/// Gaussian-smeared current at t = 0 against the closed-form lower bound:
/// returns {lhs, -hbar / (32 pi m sigma^2)}.
std::pair<double, double> eveson_quadratic_check(const MomentumState& s, double sigma);

}  // namespace backflow
