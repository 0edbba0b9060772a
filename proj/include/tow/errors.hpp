#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tow {

/// Bad user input or a violated precondition: wrong parameter range, mismatched
/// shapes, malformed configuration.  The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometric precondition failed (a probe ball does not fit inside the domain,
/// a stencil target fell outside the grid, ...).
class GeometryError : public ValidationError {
 public:
  explicit GeometryError(const std::string& what) : ValidationError(what) {}
};

/// A measurement ball contained no grid node.
class EmptyBall : public GeometryError {
 public:
  explicit EmptyBall(const std::string& what) : GeometryError(what) {}
};

/// Two fields that must share one grid do not.
class DomainMismatch : public ValidationError {
 public:
  explicit DomainMismatch(const std::string& what) : ValidationError(what) {}
};

/// An estimate that divides by a positive field hit a non-positive value.
class NonPositiveField : public ValidationError {
 public:
  explicit NonPositiveField(const std::string& what) : ValidationError(what) {}
};

/// Finite-difference probe of a normalized p-Laplacian where the gradient is
/// numerically zero; the operator is undefined there.
class DegenerateGradient : public std::runtime_error {
 public:
  explicit DegenerateGradient(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration ran out of sweeps.  Carries the state at abort so the
/// caller can report it.  The CLI maps this to exit code 2.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::uint64_t iterations, double residual)
      : std::runtime_error(what), iterations(iterations), residual(residual) {}
  std::uint64_t iterations;
  double residual;
};

/// A simulated game or walk exceeded its step cap.
class StepLimitExceeded : public std::runtime_error {
 public:
  explicit StepLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tow
