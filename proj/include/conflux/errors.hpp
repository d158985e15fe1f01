#pragma once
/*
 * Error hierarchy.
 *
 * ValidationError covers malformed input (bad dimensions, non-proper rational
 * entries, unusable configuration) and maps to CLI exit code 2.  NumericError
 * covers well-formed input on which the requested computation degenerates
 * (poles, resonance, singular steps, lost convergence) and maps to exit code 3.
 */
#include <stdexcept>

namespace conflux {

// Root of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unusable input.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerically degenerate computation on well-formed input.
class NumericError : public Error {
public:
    using Error::Error;
};

// Evaluation at (or too close to) a pole of a Gamma ratio or rational entry.
class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

// Two eigenvalues of the constant term differ by a nonzero integer (or the
// Sylvester-type operator of the gauge recurrence is singular to tolerance).
class ResonanceError : public NumericError {
public:
    using NumericError::NumericError;
};

// A matrix that must be inverted is singular to working tolerance.
class SingularMatrixError : public NumericError {
public:
    using NumericError::NumericError;
};

// An eigenvector basis is too ill-conditioned to be trusted.
class IllConditionedError : public NumericError {
public:
    using NumericError::NumericError;
};

// Evaluation outside the certified half-plane of convergence.
class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

// An iterative refinement failed to stabilize within its budget.
class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

// Meromorphic continuation hit a pole or a singular step matrix, or could not
// reach a certified seed.
class PathError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace conflux
