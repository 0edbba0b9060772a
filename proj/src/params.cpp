#include "tow/params.hpp"

#include <cmath>
#include <string>

#include "tow/errors.hpp"

namespace tow {

std::pair<double, double> derive_probabilities(double p, int n) {
  if (!std::isfinite(p) || p <= 2.0) {
    throw ValidationError("p must be finite and > 2, got p = " + std::to_string(p) +
                          " (the tug-of-war weight alpha = (p-2)/(n+p) vanishes or turns negative)");
  }
  if (n < 1) {
    throw ValidationError("dimension n must be >= 1, got n = " + std::to_string(n));
  }
  const double alpha = (p - 2.0) / (n + p);
  const double beta = (n + 2.0) / (n + p);
  return {alpha, beta};
}

GameParams GameParams::create(double p, int n, double epsilon) {
  auto [alpha, beta] = derive_probabilities(p, n);
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw ValidationError("step radius epsilon must be finite and > 0, got " +
                          std::to_string(epsilon));
  }
  GameParams gp;
  gp.p = p;
  gp.n = n;
  gp.epsilon = epsilon;
  gp.alpha = alpha;
  gp.beta = beta;
  return gp;
}

}  // namespace tow
