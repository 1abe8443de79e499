#pragma once

#include <stdexcept>
#include <string>

namespace heunspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical or numerical input violates one of its invariants.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Spectral parameter of one model handed to an operation of the other.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a singular point of the radial equation (r = beta).
class SingularPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivergingSeries : public Error {
 public:
  DivergingSeries(int index, double magnitude)
      : Error("diverging series: |c_" + std::to_string(index) +
              "| = " + std::to_string(magnitude) + " exceeds 1e300"),
        index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// No real closed-form level: the radicand under the square root is negative.
class NegativeDiscriminant : public Error {
 public:
  explicit NegativeDiscriminant(double value)
      : Error("negative discriminant: " + std::to_string(value)),
        value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// The finite-difference eigenpair failed its residual check.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// A requested energy level does not exist at the given parameters.
class LevelMissing : public Error {
 public:
  using Error::Error;
};

}  // namespace heunspec
