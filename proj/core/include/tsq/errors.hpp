#pragma once

#include <stdexcept>

namespace tsq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values (index out of range, mismatched dimensions).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid inputs (non-unitary matrix, incomplete projector set,
// entangled pair where a product was required).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerically vanished quantities (all outcome probabilities below floor).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Register size cap exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Entanglement resource misuse (consumed channel reuse, empty pool).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Protocol precondition broken (disturbance in a protected window).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Object used in the wrong lifecycle state (unfinalized transcript).
class StateError : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration; maps to CLI usage errors.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsq
