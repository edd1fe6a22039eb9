#ifndef GEOMECH_ERRORS_HPP
#define GEOMECH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geomech {

/// Operands live on different algebras (so3 vs se3) or the wrong kind of system.
class TagMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physically or mathematically invalid parameters (nonpositive inertia, bad dt, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the region where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A non-finite value appeared where a finite one is required.
class NonFiniteValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solve failed; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace geomech

#endif  // GEOMECH_ERRORS_HPP
