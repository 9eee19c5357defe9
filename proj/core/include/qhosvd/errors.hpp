#pragma once

#include <stdexcept>
#include <string>

namespace qhosvd {

/// Dimension or extent mismatch between operands.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Mode index outside 1..order, or repeated in a mode list.
class ModeError : public std::runtime_error {
public:
    explicit ModeError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameter value (negative threshold, bad config field, ...).
class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative SVD failed to reduce the off-bidiagonal residual in the sweep budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), off_diagonal_residual(residual) {}
    double off_diagonal_residual;
};

/// Violated internal invariant (e.g. uncovered pixel during aggregation).
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// File read/write or format problem.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qhosvd
