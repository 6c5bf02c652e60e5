#pragma once

#include <stdexcept>
#include <string>

namespace homshift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain: bad series parameters, poles,
// window/index-set mismatches, oversized flow segments.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operands built on different windows or in different bases.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public NumericalError {
 public:
  SingularityError(const std::string& what, double condition_estimate)
      : NumericalError(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace homshift
