#pragma once

#include <stdexcept>
#include <string>

namespace qps {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A point was evaluated outside the domain lattice of a box spline.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A construction precondition does not hold (zero column, non-pointed
/// matrix, straddling piece, negative bound, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qps
