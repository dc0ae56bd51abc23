#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// A stated precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature or iteration failed to reach the requested accuracy.
/// Carries the achieved error estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double tolerance)
        : std::runtime_error(what + " (estimate=" + std::to_string(estimate) +
                             ", tol=" + std::to_string(tolerance) + ")"),
          estimate_(estimate),
          tolerance_(tolerance) {}

    double estimate() const noexcept { return estimate_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    double estimate_;
    double tolerance_;
};

/// Numerical degeneracy that must not occur for valid inputs; a bug signal.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fraclab
