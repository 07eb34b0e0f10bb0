#pragma once

#include <stdexcept>
#include <string>

namespace wrad {

// Base class for all library errors. The CLI maps any of these to exit code 2
// except verification failures, which are reported through Report rows.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A time parameter was required to sit on a grid knot and does not.
// There is no silent snapping; callers must refine the grid instead.
struct TimeNotOnGrid : Error {
    using Error::Error;
};

// Two vectors live on grids with no common refinement (neither step count
// divides the other), or auto-refinement was disabled.
struct GridMismatch : Error {
    using Error::Error;
};

// Target grid is not an integer refinement of the source grid.
struct NotARefinement : Error {
    using Error::Error;
};

// Constraint vectors are linearly dependent within tolerance.
struct SingularGram : Error {
    SingularGram(const std::string& what, double smallest, double largest)
        : Error(what), smallest_eigenvalue(smallest), largest_eigenvalue(largest) {}
    double smallest_eigenvalue;
    double largest_eigenvalue;
};

// Conditioning times must satisfy 0 < T_1 < ... < T_m.
struct TimesNotIncreasing : Error {
    using Error::Error;
};

// Hermite degree beyond the supported guardrail.
struct DegreeTooLarge : Error {
    using Error::Error;
};

// Shift-of-variance requires the variance parameter to dominate var(X).
struct VarianceOrder : Error {
    using Error::Error;
};

// A quantity that must be nonnegative came out negative beyond tolerance.
struct NumericalInconsistency : Error {
    using Error::Error;
};

// A conditioned covariance matrix has an eigenvalue below -tol * lambda_max.
struct IndefiniteCovariance : Error {
    using Error::Error;
};

// Bridge time T must be a positive knot.
struct InvalidBridgeTime : Error {
    using Error::Error;
};

// Vector fails the membership test for the centered subspace of a law
// (it is not invariant under the law's constraint projection).
struct NotCentered : Error {
    using Error::Error;
};

// Functional specification not recognized or not evaluable.
struct UnknownFunctional : Error {
    using Error::Error;
};

// Two Fock elements belong to different truncated spaces.
struct BaseMismatch : Error {
    using Error::Error;
};

// Input JSON does not match the expected schema.
struct SchemaError : Error {
    using Error::Error;
};

// Filesystem failure while reading input or writing a report.
struct IoError : Error {
    using Error::Error;
};

// Miscellaneous precondition violations (negative variance parameter,
// sample count < 1, grid too large for the dense oracle, ...).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace wrad
