#pragma once

#include <stdexcept>
#include <string>

namespace ineq {

/// Argument outside the mathematical domain of an operation (p >= 1, x < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input: weights that do not sum to one, non-convex curves, bad files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The distribution has zero mean (it is the point mass at zero), so
/// Lorenz curves and inequality indices are undefined.
class OutsideMError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
  OutsideMError() : std::domain_error("distribution has zero mean (outside M)") {}
};

/// An integral that should be finite (a mean) diverged.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ineq
