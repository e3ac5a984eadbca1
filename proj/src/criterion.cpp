#include "backflow/criterion.hpp"

#include <algorithm>
#include <cmath>

#include "backflow/errors.hpp"

namespace backflow {

namespace {
constexpr double kZeroTol = 1e-13;  // a moment is "zero" below kZeroTol * max |f_n|

double scale_of(const MomentTriple& m) {
    return std::max({std::abs(m.f0), std::abs(m.f1), std::abs(m.f2)});
}
}  // namespace

QuadraticForm quadratic_form(const MomentTriple& m) {
    QuadraticForm q;
    q.A = 2.0 * std::real(m.f0 * std::conj(m.f1));
    q.B = m.f0 * std::conj(m.f2) + std::norm(m.f1);
    q.C = 2.0 * std::real(m.f1 * std::conj(m.f2));
    q.discriminant = std::norm(q.B) - q.A * q.C;
    return q;
}

double condition_value(cplx a, const MomentTriple& m) {
    return 2.0 * std::real((a * m.f0 - m.f1) * std::conj(a * m.f1 - m.f2));
}

BackflowVerdict decide(const MomentTriple& m) {
    BackflowVerdict v;
    const double s = scale_of(m);
    if (!(s > 0.0)) return v;  // all moments zero: J = 0 for every a

    const QuadraticForm q = quadratic_form(m);
    const double eps2 = kZeroTol * s * s;  // threshold for the s^2-sized coefficients

    const bool z0 = std::abs(m.f0) < kZeroTol * s;
    const bool z1 = std::abs(m.f1) < kZeroTol * s;
    const bool z2 = std::abs(m.f2) < kZeroTol * s;

    if (std::abs(q.A) <= eps2) {
        // Degenerate zero-current cases: f0 = f1 = 0, f1 = f2 = 0, or
        // f1 = 0 with the f0 f2 cross term vanishing too.
        if ((z0 && z1) || (z1 && z2) || std::abs(q.B) <= eps2) return v;
        // The value is -2 Re(B a) + C: pick a along conj(B), far enough
        // past the C/(2|B|) threshold.
        const cplx dir = std::conj(q.B) / std::abs(q.B);
        const double R = std::max(1.0, q.C / (2.0 * std::abs(q.B)) + 1.0);
        v.witness_a = R * dir;
        v.condition_value = condition_value(*v.witness_a, m);
        v.is_backflow = v.condition_value < 0.0;
        return v;
    }

    if (q.A < 0.0) {
        const cplx dir = std::abs(q.B) > eps2 ? std::conj(q.B) / std::abs(q.B) : cplx{1.0, 0.0};
        v.unbounded_direction = dir;
        const double r01 = std::abs(m.f1) / std::abs(m.f0);
        const double r12 = std::abs(m.f2) / std::abs(m.f1);
        double R = 10.0 * (r01 + r12 + 1.0);
        cplx w = R * dir;
        // A < 0 dominates for large |a|; a few doublings always suffice.
        for (int k = 0; k < 8 && condition_value(w, m) >= 0.0; ++k) {
            R *= 10.0;
            w = R * dir;
        }
        v.witness_a = w;
        v.condition_value = condition_value(w, m);
        v.is_backflow = v.condition_value < 0.0;
        return v;
    }

    // A > 0: bounded minimum at conj(B)/A.
    const cplx aopt = std::conj(q.B) / q.A;
    v.optimal_a = aopt;
    const double D = q.discriminant;
    if (D > kZeroTol * s * s * s * s) {
        v.is_backflow = true;
        v.witness_a = aopt;
        v.condition_value = -D / q.A;
    } else {
        // |f1^2 - f0 f2| = 0: the form is a perfect square, never negative.
        v.is_backflow = false;
        v.condition_value = 0.0;
        v.witness_a = aopt;
    }
    const double imag_mag =
        std::max({std::abs(m.f0.imag()), std::abs(m.f1.imag()), std::abs(m.f2.imag())});
    if (imag_mag <= kZeroTol * s && !z0 && !z1) {
        const double r1 = m.f1.real() / m.f0.real();
        const double r2 = m.f2.real() / m.f1.real();
        v.real_window = std::make_pair(std::min(r1, r2), std::max(r1, r2));
    }
    return v;
}

cplx optimal_a(const MomentTriple& m) {
    const QuadraticForm q = quadratic_form(m);
    const double s = scale_of(m);
    if (!(q.A > kZeroTol * s * s))
        throw not_applicable_error("optimal_a: requires A > 0; use decide() for this triple");
    return std::conj(q.B) / q.A;
}

}  // namespace backflow
