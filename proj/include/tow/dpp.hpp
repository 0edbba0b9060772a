#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>

#include "tow/field.hpp"
#include "tow/params.hpp"
#include "tow/stencil.hpp"

namespace tow {

struct BallStats {
  double sup = 0.0;
  double inf = 0.0;
  double mean = 0.0;
};

/// Max, min and unweighted mean of u over the closed epsilon-ball stencil
/// around an interior node.  The mean runs over every stencil node including
/// the center, in lexicographic stencil order (fixed summation order keeps
/// results bit-identical across serial and parallel sweeps).
BallStats ball_statistics(const ScalarField& u, std::size_t node, const BallStencil& st);

/// One application of the dynamic-programming operator
///   (T u)(x) = alpha/2 * (sup + inf of u over the ball) + beta * mean + eps^2 f(x)
/// on interior nodes; strip values are copied through unchanged.
ScalarField dpp_apply(const ScalarField& u, const GameParams& params);         // OpenMP sweep
ScalarField dpp_apply_serial(const ScalarField& u, const GameParams& params);  // reference

/// sup over interior nodes of |T(u) - u|.
double residual(const ScalarField& u, const GameParams& params);

/// Default stopping tolerance: 1e-9 * (1 + ||F||_inf + ||f||_inf).
double default_tolerance(const DiscreteDomain& dom);

enum class SweepScheme {
  Jacobi,       // double-buffered; order-independent, parallel
  GaussSeidel,  // in-place ascending index order; serial, usually ~2x fewer sweeps
};

struct SolveOptions {
  double tol = 0.0;  // <= 0 means default_tolerance(domain)
  std::uint64_t max_iter = 1'000'000;
  SweepScheme scheme = SweepScheme::Jacobi;
  /// Interior starting values.  Empty: start from the constant inf F (the
  /// monotone iteration).  A provided field is used for its interior values;
  /// its strip is reset to F.
  std::optional<ScalarField> init;
  bool parallel = true;  // Jacobi only; bit-identical either way
  /// Run the certified-distance tail (see solve_value).  Switch off for bulk
  /// measurement solves: the result still has residual <= tol, but its
  /// distance to the fixed point is only about tol/(1 - q), which can matter
  /// when two runs from different starts must agree tightly.
  bool certify = true;
};

struct SolveResult {
  ScalarField u;
  std::uint64_t iterations = 0;
  double residual = 0.0;
  /// True when every sweep was pointwise non-decreasing.  Guaranteed by the
  /// monotone iteration (start from inf F, f >= 0); reported for any start.
  bool monotone = true;
};

/// Iterates T to its fixed point.  A sweep whose sup-norm change is <= tol
/// already bounds the residual of the result by tol (T is 1-Lipschitz in the
/// sup norm), but still leaves the iterate about change/(1 - q) away from the
/// fixed point, q being the contraction factor of the sweep.  So once the
/// change drops below tol, a computed number of extra sweeps follows, sized
/// from the contraction rate observed over the last sweeps, shrinking the
/// estimated distance to the fixed point below tol as well.  Runs from
/// different initializations therefore land within a few tol of each other.
/// The reported residual is re-measured on the returned field.  Throws
/// NonConvergence if the residual still exceeds tol after max_iter sweeps.
SolveResult solve_value(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                        const SolveOptions& options = {});

}  // namespace tow
