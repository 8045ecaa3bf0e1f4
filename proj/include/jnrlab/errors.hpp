#pragma once

#include <stdexcept>

namespace jnr {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (documents, parameters, data).
struct ValidationError : Error {
  using Error::Error;
};

struct DuplicatePolesError : ValidationError {
  using ValidationError::ValidationError;
};
struct ZeroPolynomialError : Error {
  using Error::Error;
};
struct ImaginaryResidueError : Error {
  using Error::Error;
};
struct PoleOffCurveError : Error {
  using Error::Error;
};
struct GridMismatchError : Error {
  using Error::Error;
};
struct NegativeWeightError : Error {
  using Error::Error;
};
struct DegreeCancellationError : Error {
  using Error::Error;
};
struct IncompatibleDegreesError : Error {
  using Error::Error;
};
struct PoleAtInfinityError : Error {
  using Error::Error;
};
struct AntipodalDegeneracyError : Error {
  using Error::Error;
};
struct ResourceLimitError : Error {
  using Error::Error;
};
struct QuadratureError : Error {
  using Error::Error;
};

}  // namespace jnr
