#pragma once

#include <stdexcept>

namespace ergo {

// Two failure families: bad inputs (CLI exit code 1) and numerical
// breakdown of an otherwise valid computation (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : ValidationError { using ValidationError::ValidationError; };
struct DimensionTooLarge : ValidationError { using ValidationError::ValidationError; };
struct NotHermitian : ValidationError { using ValidationError::ValidationError; };
struct NegativeEigenvalue : ValidationError { using ValidationError::ValidationError; };
struct NotPure : ValidationError { using ValidationError::ValidationError; };
struct InteractingHamiltonian : ValidationError { using ValidationError::ValidationError; };
struct EnergyMismatch : ValidationError { using ValidationError::ValidationError; };
struct OutOfScopeFamily : ValidationError { using ValidationError::ValidationError; };

struct NoConvergence : NumericalError { using NumericalError::NumericalError; };
struct InfeasibleConstraint : NumericalError { using NumericalError::NumericalError; };

}  // namespace ergo
