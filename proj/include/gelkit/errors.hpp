#pragma once

#include <stdexcept>
#include <string>

namespace gelkit {

/// Argument outside the mathematical domain of a function (non-positive
/// mass, k = 0, gamma outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid run configuration or input data.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal contract violation, e.g. merging an inert particle.
class LogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical failure of a solver (blow-up, non-finite state).
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gelkit
