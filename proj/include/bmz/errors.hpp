#pragma once

#include <stdexcept>
#include <string>

namespace bmz {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix dimensions or out-of-range indices.
struct DimensionError : Error {
    using Error::Error;
};

/// A matrix was singular to the requested tolerance.
struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& what, double pivot)
        : Error(what), pivot_magnitude(pivot) {}
    double pivot_magnitude;
};

/// Iterative eigensolver failed to converge.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Rank profile or null-space structure inconsistent with a valid Jordan
/// form at the given tolerances.
struct DegeneracyError : Error {
    using Error::Error;
};

/// A nonzero or long Jordan block of C+C' could not be paired; the input
/// failed antisymmetry or the decomposition failed numerically.
struct TheoremViolationError : Error {
    using Error::Error;
};

/// Matrix square root requested for an eigenvalue on the branch cut.
struct BranchCutError : Error {
    using Error::Error;
};

/// The two condensates are orthogonal to tolerance; the transition density
/// is undefined.
struct OrthogonalStatesError : Error {
    OrthogonalStatesError(const std::string& what, double pivot)
        : Error(what), pivot_magnitude(pivot) {}
    double pivot_magnitude;
};

/// Malformed input file or spec.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace bmz
