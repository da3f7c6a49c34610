#pragma once

#include <stdexcept>
#include <string>

namespace ordfix {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was not met by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A point was handed to a map outside of its declared domain, or a map
/// produced a point outside of its domain while being iterated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the given cone (e.g. suprema under the
/// Lorentz order).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// A point supplied as a fixed point fails ||Tp - p|| <= tol.
class NotAFixedPoint : public Error {
 public:
  using Error::Error;
};

/// Malformed mapping file or configuration document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ordfix
