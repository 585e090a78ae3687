#pragma once

#include <stdexcept>
#include <string>

namespace probo {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point or design whose dimension disagrees with the model or kernel.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Precondition violations on user-supplied values (bad hyperparameters,
// duplicate design points, malformed specs).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The base kernel matrix could not be factorized even after jitter escalation.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace probo
