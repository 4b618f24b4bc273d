#ifndef FRACHARDY_ERRORS_HPP
#define FRACHARDY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frachardy {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A quadrature rule could not certify its target accuracy.
struct QuadratureError : Error {
    explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

/// Cross-backend calibration of a normalization constant failed to validate.
struct CalibrationError : Error {
    explicit CalibrationError(const std::string& msg) : Error(msg) {}
};

/// An iterative solver failed to converge (or detected indefiniteness).
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// Monotone iteration left its growth bound (supercritical coefficient).
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

/// Successive boundary-flux estimates disagree; extrapolation unreliable.
struct ExtrapolationError : Error {
    explicit ExtrapolationError(const std::string& msg) : Error(msg) {}
};

/// A regression/fit did not meet its quality threshold.
struct FitError : Error {
    explicit FitError(const std::string& msg) : Error(msg) {}
};

} // namespace frachardy

#endif
