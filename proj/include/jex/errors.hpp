#pragma once

#include <stdexcept>
#include <string>

namespace jex {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The requested structure does not exist for the given marginals.
class ExistenceError : public Error {
 public:
  using Error::Error;
};

/// A named model constraint is violated. The constraint tag identifies which
/// one (e.g. "JE_parameters_1", "G-JE_parameters_1", "JE_parameters_2").
class ConstraintError : public Error {
 public:
  ConstraintError(std::string constraint, const std::string& detail)
      : Error(constraint + " violated: " + detail),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

/// A distortion is paired with an incompatible marginal.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// Invalid strategy/dimension combination or malformed configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// File or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jex
