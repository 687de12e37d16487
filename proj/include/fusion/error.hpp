#pragma once

#include <stdexcept>
#include <string>

namespace fusion {

// Every failure raised by the library derives from Error, so callers that do
// not care about the category can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed shapes, out-of-range indices, integer overflow, or derived
// structures that fail to be what the theory says they must be.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical routine failed to reach its certified tolerance.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// Two floating-point quantities are too close to decide safely.
class PrecisionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Search bounds or guards are out of the supported range.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A check that a proved statement guarantees has failed on concrete input.
class TheoryViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fusion
