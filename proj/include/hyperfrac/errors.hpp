#pragma once

#include <stdexcept>
#include <string>

namespace hyperfrac {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A point failed a model constraint (Lorentz form, unit-ball membership).
struct InvalidPointError : DomainError {
    explicit InvalidPointError(const std::string& msg) : DomainError(msg) {}
};

// Derivative order beyond the supported jet window.
struct UnsupportedOrderError : DomainError {
    explicit UnsupportedOrderError(const std::string& msg) : DomainError(msg) {}
};

// A quadrature or iterative refinement failed to reach its tolerance.
struct AccuracyError : std::runtime_error {
    explicit AccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// A transform was asked for a profile without the required decay.
struct TransformDivergenceError : std::runtime_error {
    explicit TransformDivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Normalization calibration found a non-constant ratio (formula bug upstream).
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-point iteration started from (or collapsed to) the zero profile.
struct TrivialFixedPointError : std::runtime_error {
    explicit TrivialFixedPointError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched grids between a function and an operator matrix.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Empty or degenerate sample set in a diagnostic sweep.
struct SamplingError : std::runtime_error {
    explicit SamplingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyperfrac
