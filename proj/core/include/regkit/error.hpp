#pragma once

#include <stdexcept>
#include <string>

namespace regkit {

// Error taxonomy shared by every module. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values (empty sets, mismatched sizes, malformed files).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The request is well formed but exceeds what this mode can do
// (exact enumeration above threshold, enumeration budget, vertex cap).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A checker's hypothesis does not hold on the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An invariant that should be impossible to violate was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace regkit
