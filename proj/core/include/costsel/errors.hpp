#pragma once

#include <stdexcept>
#include <string>

namespace costsel {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index or size does not match the data it is applied to.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The normal-equation system is numerically singular (pivot below tolerance).
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// A cost value is zero, negative, or non-finite.
class NonPositiveCost : public Error {
 public:
  using Error::Error;
};

/// A selection step was asked to choose from an empty candidate pool.
class EmptyCandidates : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite intermediate or final value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Configuration input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Configuration parsed but violates the schema; the message lists every violation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or stream failure while reading or writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace costsel
