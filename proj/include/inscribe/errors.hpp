#pragma once

#include <stdexcept>
#include <string>

namespace inscribe {

/// Input that violates a dimension contract (ragged points, wrong arity).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is not in the general position an operation requires
/// (affinely dependent subsets, cospherical subsets, non-full-dimensional hulls).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input: bad rationals, missing fields, unknown kinds.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A floating-point predicate landed inside its tolerance band.
class NumericUndecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction produced output that contradicts what it must satisfy.
/// Never expected to fire; callers surface it as an internal failure.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace inscribe
