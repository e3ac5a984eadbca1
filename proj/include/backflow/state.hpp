#pragma once

#include <string>

#include "backflow/profile.hpp"
#include "backflow/units.hpp"

namespace backflow {

/// A positive-momentum state. With the family factor on,
///
///   phi(p) = norm_constant * (a - p) * f(p),   p > 0,
///
/// and with it off phi(p) = norm_constant * f(p). A bare profile is
/// represented by family_factor = false, never by a sentinel value of a.
struct MomentumState {
    MomentumProfile profile;
    cplx a{0.0, 0.0};
    bool family_factor = true;
    double norm_constant = 1.0;
    Units units{};
};

/// phi(p), including the normalization constant.
cplx state_value(const MomentumState& s, double p);

/// integral of |phi|^2 with the current norm_constant.
double state_norm_squared(const MomentumState& s);

/// Returns the state with norm_constant set so that the L2 norm on
/// (0, inf) is 1. Throws degenerate_state_error on a vanishing profile.
MomentumState normalize(MomentumState s);

/// expectation of p^n in a normalized state.
double state_p_moment(const MomentumState& s, int n);

/// The three half-line moments of a profile,
///   f_n = (2 pi hbar)^{-1/2} * integral p^n f(p) dp,  n = 0, 1, 2.
/// tail_warning flags grid profiles whose sampled values have not decayed
/// at the grid cutoff.
struct MomentTriple {
    cplx f0{0.0, 0.0}, f1{0.0, 0.0}, f2{0.0, 0.0};
    bool tail_warning = false;

    cplx operator[](int n) const { return n == 0 ? f0 : (n == 1 ? f1 : f2); }
};

MomentTriple moments(const MomentumProfile& f, const Units& units);

/// JSON document {"profile":{"kind",...}, "a":[re,im], "family_factor":b,
/// "units":{"hbar","mass"}} used by the CLI and the eigenvector export.
std::string state_to_json(const MomentumState& s);
MomentumState state_from_json(const std::string& text);

}  // namespace backflow
