#pragma once

#include <stdexcept>
#include <string>

namespace vrei {

// Invalid model parameters or arguments outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature (or an iterative solver) exhausted its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A regression could not be performed or did not meet its quality gate.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Correlation-matrix or density-matrix spectrum outside its physical range.
class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed-form expansion evaluated where its prefactor is singular.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace vrei
