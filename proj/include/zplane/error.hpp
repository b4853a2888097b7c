#pragma once

#include <stdexcept>
#include <string>

namespace zplane {

/// Invalid user input: malformed config, out-of-range parameters.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solver (non-convergence, degenerate input).
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The bilinear eigenvalue-derivative formula is unusable for this vector
/// (quasi-null vector, x^T x ~ 0). Callers fall back to finite differences.
class DerivativeError : public SolverError {
public:
  using SolverError::SolverError;
};

} // namespace zplane
