#pragma once

#include <utility>

namespace tow {

/// Mixing probabilities for the step distribution:
///   alpha = (p - 2) / (n + p),   beta = (n + 2) / (n + p).
/// Requires p > 2 and n >= 1; throws ValidationError otherwise.
std::pair<double, double> derive_probabilities(double p, int n);

/// Immutable bundle (p, n, epsilon) with the derived (alpha, beta).
/// epsilon is the step radius of the game and the width of the boundary strip.
struct GameParams {
  double p = 0.0;
  int n = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Validates p > 2, n >= 1, epsilon > 0 and fills in alpha, beta.
  static GameParams create(double p, int n, double epsilon);

  double half_alpha() const { return 0.5 * alpha; }
  double eps2() const { return epsilon * epsilon; }
};

}  // namespace tow
