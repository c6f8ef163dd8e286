#pragma once

#include <stdexcept>
#include <string>

namespace ginibias {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method (series, quadrature) stopped before reaching its
/// tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ginibias
