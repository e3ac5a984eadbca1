#pragma once

#include <vector>

#include "backflow/fluxspec.hpp"

namespace backflow {

/// A rank-1 regularization of delta(x): (1/sigma) |f><f| with |f> a
/// unit-normalized positive-momentum state whose rescaled form
/// f_sigma / sqrt(sigma) tends to the x = 0 position eigenstate.
struct Regulator {
    double sigma = 1.0;
    MomentumProfile profile;     // raw shape
    double norm_constant = 1.0;  // unit-normalizes the shape on (0, inf)
    double alpha_effective = 0.0;  // exponent scale of the Gaussian shape, if any
    Units units{};

    cplx value(double p) const { return norm_constant * profile_value(profile, p); }
};

/// The Gaussian regulator sqrt(sigma / 2 pi hbar) exp(-sigma^2 p^2 / (alpha^2 hbar^2))
/// truncated to p > 0. With alpha^2 = 32 pi the truncated profile has unit
/// norm exactly, so that is the recorded alpha_effective.
Regulator gaussian_regulator(double sigma, const Units& units);

/// Wrap an arbitrary profile as a regulator (normalized numerically).
Regulator make_regulator(MomentumProfile profile, double sigma, const Units& units);

/// The two-eigenvalue spectrum of the regularized current restricted to
/// positive momenta,  lambda_pm = (+- <p^2>_f^{1/2} + <p>_f) / (2 m sigma),
/// with eigenstates N (<p^2>^{1/2} -+ ... +- p) |f> — family-form states.
/// phi_plus is stored with a = -<p^2>^{1/2} (the same ray up to overall
/// sign). zero_space_dim is grid-level information; the closed-form path
/// reports 0.
struct RegSpectrum {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    MomentumState phi_plus;
    MomentumState phi_minus;
    std::size_t zero_space_dim = 0;
};

RegSpectrum reg_spectrum(const Regulator& reg, const Units& units);

/// Nystrom matrix of (1/2 m sigma)(p |f><f| + |f><f| p) on the grid;
/// rank <= 2 by construction.
HermitianOperator reg_matrix(const Regulator& reg, const HalfLineGrid& grid,
                             const Units& units);

/// <psi_a| J_reg(g) |psi_a> for a family state psi_a = N (a - p) f(p) and
/// an interpolating profile g (normalized internally):
///   (N^2 / m sigma) Re[ conj(a G1 - G2) (a G0 - G1) ],  G_n = <g|p^n|f_raw>.
double jreg_expectation(const MomentumState& psi_a, const MomentumProfile& g, double sigma,
                        const Units& units);

enum class ARule { Fixed, Tracked };

struct LimitStep {
    int step = 0;
    double sigma = 0.0;
    cplx a{0.0, 0.0};
    double expectation = 0.0;           // raw <J_reg(g_s)> value
    double rescaled_expectation = 0.0;  // rebuilt from sigma^{-1/2}-rescaled brackets
};

struct LimitTrace {
    std::vector<LimitStep> steps;
    bool degenerate = false;        // current vanishes identically in the limit
    double limit_current = 0.0;     // J(0) of the family state at the final a
    double final_relative_deviation = 0.0;
};

/// The sigma -> 0 interpolation: Gaussian regulators g_s with
/// sigma_s = sigma0 2^{-s}. Under Tracked the constant a follows the
/// minimizer built from the mixed brackets (kept when the quadratic
/// coefficient is not positive); under Fixed it stays at the initial
/// eigenstate value sqrt(<p^2>_f). sigma0 = 0 picks the value whose
/// regulator matches a Gaussian f exactly, so step 0 is the eigenstate.
LimitTrace limit_procedure(const MomentumProfile& f, int steps, ARule rule, const Units& units,
                           double sigma0 = 0.0);

}  // namespace backflow
