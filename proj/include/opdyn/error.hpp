#pragma once

#include <stdexcept>
#include <string>

namespace opdyn {

// Base for all library errors. The CLI maps ValidationError to exit code 1
// and NumericalError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Agent id outside [0, n).
class InvalidAgentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Parameter outside its admissible range; message names the field.
class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed or unreadable input file.
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Precondition on a matrix argument violated (e.g. not row-stochastic).
class ContractError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class VerificationUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace opdyn
