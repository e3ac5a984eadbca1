#pragma once

#include <optional>
#include <utility>

#include "backflow/state.hpp"

namespace backflow {

/// Coefficients of the quadratic-in-a negativity condition
///   A |a|^2 - 2 Re(B a) + C < 0
/// for the current of a family state (a - p) f(p), built from the three
/// moments of f. The discriminant |B|^2 - A C equals |f1^2 - f0 f2|^2 and
/// is therefore never negative.
struct QuadraticForm {
    double A = 0.0;   // 2 Re(f0 conj(f1))
    cplx B{0.0, 0.0};  // f0 conj(f2) + |f1|^2
    double C = 0.0;   // 2 Re(f1 conj(f2))
    double discriminant = 0.0;  // |B|^2 - A C
};

QuadraticForm quadratic_form(const MomentTriple& m);

/// 2 Re[(a f0 - f1) conj(a f1 - f2)]; negative iff the family state with
/// this a has negative current at t = 0. Equals A|a|^2 - 2Re(B a) + C.
double condition_value(cplx a, const MomentTriple& m);

/// Outcome of the case analysis over the quadratic form.
///
/// is_backflow means a negative current is achieved at witness_a, and
/// condition_value is the value there. optimal_a is present exactly when
/// A > 0 (the bounded-minimum case); unbounded_direction exactly when
/// A < 0 (the value decreases without bound along that direction).
/// real_window is the (lo, hi) interval of real a with negative current,
/// reported for real moment data with A > 0.
struct BackflowVerdict {
    bool is_backflow = false;
    double condition_value = 0.0;
    std::optional<cplx> optimal_a;
    std::optional<cplx> unbounded_direction;
    std::optional<std::pair<double, double>> real_window;
    std::optional<cplx> witness_a;
};

/// Full case analysis; every MomentTriple yields a verdict.
BackflowVerdict decide(const MomentTriple& m);

/// conj(B)/A, the minimizer of the quadratic form when A > 0.
/// Throws not_applicable_error for A <= 0 (use decide() there).
cplx optimal_a(const MomentTriple& m);

}  // namespace backflow
