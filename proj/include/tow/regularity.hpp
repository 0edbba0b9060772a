#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "tow/field.hpp"
#include "tow/params.hpp"

namespace tow {

/// Outcome of one estimate measurement.  `measured_constant` is the quantity
/// the corresponding bound caps; `pass` compares it against `ceiling` (or
/// against the estimate's own threshold where the bound fixes one, as in the
/// local comparison).  `degenerate` flags a zero-denominator configuration
/// that passes trivially.  `details` carries every intermediate (oscillations,
/// radii, witnesses) so reports can be audited.
struct RegularityReport {
  std::string estimate;
  bool pass = true;
  bool degenerate = false;
  double measured_constant = 0.0;
  double ceiling = std::numeric_limits<double>::infinity();
  double p = 0.0;
  int n = 0;
  double epsilon = 0.0;
  std::string domain_id;
  std::map<std::string, double> details;
};

/// max - min of u over non-Exterior nodes in the closed ball of `radius`
/// around `center`.  Throws EmptyBall when no node qualifies.
double oscillation(const ScalarField& u, std::size_t center, double radius);

/// osc(u, B_r(a)) <= C (r/R) [osc(u, B_6R(a)) + osc(f, B_6R(a))].
/// Preconditions: epsilon < r <= R and B_6R(a) inside Omega.  The f term is
/// measured over B_6R (the radius the estimate is stated on); the B_6r
/// variant is recorded alongside in details.
RegularityReport verify_lipschitz(const ScalarField& u, const ScalarField& f_field,
                                  const GameParams& params, std::size_t a, double r, double R,
                                  double ceiling = std::numeric_limits<double>::infinity());

/// sup_{B_r(a)} u <= K (inf_{B_r(a)} u + sup_Omega f), needs B_30r(a) in Omega
/// and u > 0 on the interior.
RegularityReport verify_harnack(const ScalarField& u, const GameParams& params, std::size_t a,
                                double r,
                                double ceiling = std::numeric_limits<double>::infinity());

/// u(x) >= (alpha/2)^20 u(y) for interior pairs with |x - y| <= 10 epsilon.
/// measured_constant is the worst ratio u(x)/u(y); pass checks it against the
/// (alpha/2)^20 floor.
RegularityReport verify_local_comparison(const ScalarField& u, const GameParams& params,
                                         std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// sup_Omega u <= C (sup_Gamma F + sup_Omega f); measured_constant is the
/// ratio, which the game argument bounds independently of epsilon.
RegularityReport verify_global_bound(const ScalarField& u, const GameParams& params,
                                     double ceiling = std::numeric_limits<double>::infinity());

/// Raising payoffs cannot lower the value: pass iff v >= u - slack on every
/// interior and strip node.  measured_constant is min(v - u).
RegularityReport verify_payoff_monotonicity(const ScalarField& u, const ScalarField& v,
                                            double slack);

/// inf_{B_r(z)} u <= C r^{-n} u(y) for z in B_2R(y), 2 eps < r < R,
/// B_30R(y) in Omega.  measured_constant = inf * r^n / u(y); the weaker
/// r^{2n}-normalized variant is recorded in details for comparison.
RegularityReport verify_inf_decay(const ScalarField& u, const GameParams& params, std::size_t y,
                                  std::size_t z, double r, double R,
                                  double ceiling = std::numeric_limits<double>::infinity());

}  // namespace tow
