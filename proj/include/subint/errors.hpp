#pragma once

#include <stdexcept>
#include <string>

namespace subint {

struct SubintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : SubintError {
  using SubintError::SubintError;
};

struct EmptyPolyhedronError : SubintError {
  using SubintError::SubintError;
};

struct PointNotInSet : SubintError {
  using SubintError::SubintError;
};

struct ImproperSum : SubintError {
  using SubintError::SubintError;
};

struct EmptySummand : SubintError {
  using SubintError::SubintError;
};

struct NotInSubdifferential : SubintError {
  using SubintError::SubintError;
};

struct NotEpsSubgradient : SubintError {
  using SubintError::SubintError;
};

struct NotInteriorPoint : SubintError {
  using SubintError::SubintError;
};

// Raised when a checker finds both sides of an identity disagreeing.
// Must never fire on valid inputs; the message carries the counterexample.
struct TheoremViolation : SubintError {
  using SubintError::SubintError;
};

struct SchemaError : SubintError {
  using SubintError::SubintError;
};

struct LimitExceeded : SubintError {
  using SubintError::SubintError;
};

}  // namespace subint
