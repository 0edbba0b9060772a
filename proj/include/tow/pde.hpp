#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tow/domain.hpp"
#include "tow/dpp.hpp"
#include "tow/params.hpp"

namespace tow {

/// Running payoff that makes the game value approximate the solution of
/// -Delta_p^N u = f_pde:  f_game = p * beta * f_pde / (2 (n + 2)).
double scale_running_payoff(double f_pde, const GameParams& params);

/// Closed-form pair (u_star, f_pde) with -Delta_p^N u_star = f_pde.
struct ManufacturedSolution {
  SpatialFn u_star;
  SpatialFn f_pde;
  std::string description;
};

/// u_star(x) = A - |x|^2 p / (2 (n + p - 2)), for which -Delta_p^N u_star = 1.
/// Requires A large enough that u_star > 0 on the ball of `domain_radius`
/// (plus the boundary strip the grids will add).
ManufacturedSolution make_quadratic_solution(const GameParams& params, double A,
                                             double domain_radius);

/// Centered finite-difference probe of the normalized p-Laplacian
///   Delta_p^N u = (1/p) [ (p - 2) Delta_inf^N u + Delta u ]
/// at x with spacing h_fd.  Throws DegenerateGradient when |grad u| falls
/// below gradient_floor (the operator is undefined at critical points).
double normalized_plaplacian_fd(const SpatialFn& u, std::span<const double> x, double h_fd,
                                const GameParams& params, double gradient_floor = 1e-8);

struct ConvergenceRow {
  double epsilon = 0.0;
  double h = 0.0;
  double sup_error = 0.0;
  std::uint64_t iterations = 0;
  double residual = 0.0;
  double runtime_seconds = 0.0;
};

struct StudyOptions {
  double tol = 0.0;  // <= 0: solver default
  std::uint64_t max_iter = 1'000'000;
  SweepScheme scheme = SweepScheme::Jacobi;
  /// false runs the negative control: the raw f_pde is fed to the game
  /// without the p-beta scaling, which solves a different equation.
  bool scale_payoff = true;
};

/// For each epsilon: builds the grid at h = epsilon/4 with F = u_star on the
/// strip and the (scaled) f_pde inside, solves the fixed point and reports the
/// sup-norm error against u_star over the interior.
std::vector<ConvergenceRow> convergence_study(const ManufacturedSolution& sol, const Shape& shape,
                                              double p, std::span<const double> eps_list,
                                              const StudyOptions& options = {});

/// True when each successive sup error is at most (1 + slack) times the
/// previous one, i.e. the error is non-increasing up to the slack.
bool errors_non_increasing(std::span<const ConvergenceRow> rows, double slack);

}  // namespace tow
