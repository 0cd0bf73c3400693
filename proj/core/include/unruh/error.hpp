#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad range, bad label, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A physical or numerical invariant failed on a computed object.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A numerical routine did not converge or produced unusable output.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace unruh
