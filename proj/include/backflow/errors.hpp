#pragma once

#include <stdexcept>
#include <string>

namespace backflow {

/// A state whose norm vanishes (or underflows) cannot be normalized.
class degenerate_state_error : public std::runtime_error {
public:
    explicit degenerate_state_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature failed to reach its accuracy target. Carries the point
/// (a time, usually) at which the integral was requested.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double where, double achieved)
        : std::runtime_error(what + " (at " + std::to_string(where) +
                             ", achieved error " + std::to_string(achieved) + ")"),
          where_(where), achieved_(achieved) {}
    double where() const { return where_; }
    double achieved() const { return achieved_; }

private:
    double where_;
    double achieved_;
};

/// Eigensolver did not converge.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation called outside its domain of applicability.
class not_applicable_error : public std::logic_error {
public:
    explicit not_applicable_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace backflow
