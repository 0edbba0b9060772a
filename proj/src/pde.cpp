#include "tow/pde.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "tow/errors.hpp"

namespace tow {

double scale_running_payoff(double f_pde, const GameParams& params) {
  return params.p * params.beta * f_pde / (2.0 * (params.n + 2));
}

ManufacturedSolution make_quadratic_solution(const GameParams& params, double A,
                                             double domain_radius) {
  if (!(domain_radius > 0.0)) {
    throw ValidationError("make_quadratic_solution: domain_radius must be > 0");
  }
  const double c = params.p / (2.0 * (params.n + params.p - 2.0));
  // The strip adds up to epsilon beyond the ball; keep u_star positive there too.
  const double reach = domain_radius + params.epsilon;
  if (!(A > c * reach * reach)) {
    throw ValidationError("make_quadratic_solution: need A > " + std::to_string(c * reach * reach) +
                          " for positivity on the ball of radius " + std::to_string(domain_radius) +
                          " plus the strip, got A = " + std::to_string(A));
  }
  ManufacturedSolution sol;
  sol.u_star = [A, c](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return A - c * r2;
  };
  sol.f_pde = [](std::span<const double>) { return 1.0; };
  sol.description = "u*(x) = " + std::to_string(A) + " - " + std::to_string(c) + " |x|^2";
  return sol;
}

double normalized_plaplacian_fd(const SpatialFn& u, std::span<const double> x, double h_fd,
                                const GameParams& params, double gradient_floor) {
  if (!(h_fd > 0.0)) throw ValidationError("normalized_plaplacian_fd: h_fd must be > 0");
  const int n = static_cast<int>(x.size());
  if (n != params.n) {
    throw ValidationError("normalized_plaplacian_fd: point dimension vs params.n mismatch");
  }

  std::vector<double> pt(x.begin(), x.end());
  auto eval = [&](std::span<const double> q) {
    const double v = u(q);
    if (!std::isfinite(v)) {
      throw ValidationError("normalized_plaplacian_fd: non-finite sample of u");
    }
    return v;
  };

  const double u0 = eval(pt);
  std::vector<double> grad(n), upl(n), umi(n);
  for (int a = 0; a < n; ++a) {
    pt[a] = x[a] + h_fd;
    upl[a] = eval(pt);
    pt[a] = x[a] - h_fd;
    umi[a] = eval(pt);
    pt[a] = x[a];
    grad[a] = (upl[a] - umi[a]) / (2.0 * h_fd);
  }
  double gnorm2 = 0.0;
  for (double g : grad) gnorm2 += g * g;
  const double gnorm = std::sqrt(gnorm2);
  if (gnorm < gradient_floor) {
    throw DegenerateGradient("normalized_plaplacian_fd: |grad u| = " + std::to_string(gnorm) +
                             " below floor " + std::to_string(gradient_floor));
  }

  double laplace = 0.0;
  std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    H[a][a] = (upl[a] - 2.0 * u0 + umi[a]) / (h_fd * h_fd);
    laplace += H[a][a];
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      pt[a] = x[a] + h_fd;
      pt[b] = x[b] + h_fd;
      const double upp = eval(pt);
      pt[b] = x[b] - h_fd;
      const double upm = eval(pt);
      pt[a] = x[a] - h_fd;
      const double umm = eval(pt);
      pt[b] = x[b] + h_fd;
      const double ump = eval(pt);
      pt[a] = x[a];
      pt[b] = x[b];
      H[a][b] = H[b][a] = (upp - upm - ump + umm) / (4.0 * h_fd * h_fd);
    }
  }

  double inf_lap = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) inf_lap += grad[a] * H[a][b] * grad[b];
  }
  inf_lap /= gnorm2;

  return ((params.p - 2.0) * inf_lap + laplace) / params.p;
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedSolution& sol, const Shape& shape,
                                              double p, std::span<const double> eps_list,
                                              const StudyOptions& options) {
  if (eps_list.empty()) throw ValidationError("convergence_study: empty epsilon list");
  std::vector<ConvergenceRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const GameParams params = GameParams::create(p, shape.dim(), eps);
    const double h = eps / 4.0;
    SpatialFn f_game = options.scale_payoff
                           ? SpatialFn([&sol, params](std::span<const double> x) {
                               return scale_running_payoff(sol.f_pde(x), params);
                             })
                           : sol.f_pde;

    const auto t0 = std::chrono::steady_clock::now();
    auto dom = build_domain(shape, params, h, sol.u_star, f_game);
    SolveOptions sopt;
    sopt.tol = options.tol;
    sopt.max_iter = options.max_iter;
    sopt.scheme = options.scheme;
    const SolveResult res = solve_value(dom, params, sopt);
    const auto t1 = std::chrono::steady_clock::now();

    ConvergenceRow row;
    row.epsilon = eps;
    row.h = h;
    row.iterations = res.iterations;
    row.residual = res.residual;
    row.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
    std::vector<double> pos(dom->dim());
    double err = 0.0;
    for (std::size_t i : dom->interior) {
      dom->position(i, pos);
      err = std::max(err, std::fabs(res.u.values[i] - sol.u_star(pos)));
    }
    row.sup_error = err;
    rows.push_back(row);
  }
  return rows;
}

bool errors_non_increasing(std::span<const ConvergenceRow> rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].sup_error > rows[i - 1].sup_error * (1.0 + slack)) return false;
  }
  return true;
}

}  // namespace tow
