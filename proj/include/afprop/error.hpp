#pragma once

#include <stdexcept>
#include <string>

namespace afprop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad shapes, bad parameters, inputs outside an operation's domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Data that is well formed but mutually inconsistent (e.g. theta vs digits).
class InconsistencyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Floating point could not deliver the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A computation was declined because it would exceed a work budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double required)
      : Error(what), required_(required) {}
  double required() const { return required_; }

 private:
  double required_;
};

}  // namespace afprop
