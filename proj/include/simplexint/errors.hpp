#pragma once

#include <stdexcept>
#include <string>

namespace simplexint {

/// A quadrature or oracle could not produce a trustworthy value: the
/// evaluation budget was exhausted, the integrand returned a negative or
/// non-finite value, or an adaptive rule failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested work exceeds the configured evaluation budget.
class BudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace simplexint
