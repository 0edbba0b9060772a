#include "tow/dpp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "tow/errors.hpp"

namespace tow {

namespace {

void check_compatible(const ScalarField& u, const GameParams& params) {
  if (!u.domain) throw ValidationError("dpp: field without a grid");
  const DiscreteDomain& dom = *u.domain;
  if (dom.dim() != params.n) {
    throw DomainMismatch("dpp: grid dimension " + std::to_string(dom.dim()) +
                         " vs params.n = " + std::to_string(params.n));
  }
  if (std::fabs(dom.epsilon - params.epsilon) > 1e-12 * (1.0 + dom.epsilon)) {
    throw DomainMismatch("dpp: grid was built for epsilon = " + std::to_string(dom.epsilon) +
                         ", params carry epsilon = " + std::to_string(params.epsilon));
  }
}

struct Kernel {
  const DiscreteDomain* dom;
  std::vector<std::ptrdiff_t> deltas;
  double half_alpha, beta, eps2, inv_count;

  Kernel(const DiscreteDomain& d, const GameParams& p)
      : dom(&d),
        half_alpha(p.half_alpha()),
        beta(p.beta),
        eps2(p.eps2()),
        inv_count(0.0) {
    const BallStencil st = make_ball_stencil(d.dim(), d.h, d.epsilon);
    deltas = linearize(st, d);
    inv_count = 1.0 / static_cast<double>(deltas.size());
  }

  double node(const double* v, std::size_t i) const {
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::ptrdiff_t d : deltas) {
      const double x = v[i + d];
      mx = x > mx ? x : mx;
      mn = x < mn ? x : mn;
      sum += x;
    }
    return half_alpha * (mx + mn) + beta * (sum * inv_count) + eps2 * dom->f[i];
  }

  // Jacobi sweep in -> out over the interior.  The per-node arithmetic is one
  // code path for both variants, so partitioning the loop cannot change bits.
  void sweep(const double* in, double* out, bool parallel) const {
    const auto& interior = dom->interior;
    const auto m = static_cast<std::ptrdiff_t>(interior.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t k = 0; k < m; ++k) out[interior[k]] = node(in, interior[k]);
    } else {
      for (std::ptrdiff_t k = 0; k < m; ++k) out[interior[k]] = node(in, interior[k]);
    }
  }
};

}  // namespace

BallStats ball_statistics(const ScalarField& u, std::size_t node, const BallStencil& st) {
  if (!u.domain) throw ValidationError("ball_statistics: field without a grid");
  if (u.domain->cls(node) != NodeClass::Interior) {
    throw ValidationError("ball_statistics: node " + std::to_string(node) + " is not Interior");
  }
  const std::vector<std::ptrdiff_t> deltas = linearize(st, *u.domain);
  BallStats s;
  s.sup = -std::numeric_limits<double>::infinity();
  s.inf = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::ptrdiff_t d : deltas) {
    const double x = u.values[node + d];
    s.sup = std::max(s.sup, x);
    s.inf = std::min(s.inf, x);
    sum += x;
  }
  s.mean = sum / static_cast<double>(deltas.size());
  return s;
}

namespace {

ScalarField apply_impl(const ScalarField& u, const GameParams& params, bool parallel) {
  check_compatible(u, params);
  require_finite(u, "dpp_apply input");
  const Kernel k(*u.domain, params);
  ScalarField out = u;  // strip and exterior copied through unchanged
  k.sweep(u.values.data(), out.values.data(), parallel);
  return out;
}

}  // namespace

ScalarField dpp_apply(const ScalarField& u, const GameParams& params) {
  return apply_impl(u, params, true);
}

ScalarField dpp_apply_serial(const ScalarField& u, const GameParams& params) {
  return apply_impl(u, params, false);
}

double residual(const ScalarField& u, const GameParams& params) {
  check_compatible(u, params);
  require_finite(u, "residual input");
  const Kernel k(*u.domain, params);
  std::vector<double> out = u.values;
  k.sweep(u.values.data(), out.data(), true);
  double r = 0.0;
  for (std::size_t i : u.domain->interior) r = std::max(r, std::fabs(out[i] - u.values[i]));
  return r;
}

double default_tolerance(const DiscreteDomain& dom) {
  const double f_norm = std::max(std::fabs(dom.sup_F()), std::fabs(dom.inf_F()));
  return 1e-9 * (1.0 + f_norm + dom.sup_f());
}

SolveResult solve_value(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                        const SolveOptions& options) {
  if (!dom) throw ValidationError("solve_value: null grid");

  ScalarField cur;
  if (options.init) {
    if (!options.init->domain || !options.init->domain->same_geometry(*dom)) {
      throw DomainMismatch("solve_value: init field lives on a different grid");
    }
    cur = field_from_boundary(dom, 0.0);
    for (std::size_t i : dom->interior) cur.values[i] = options.init->values[i];
    require_finite(cur, "solve_value init");
  } else {
    cur = field_from_boundary(dom, dom->inf_F());
  }
  check_compatible(cur, params);

  const double tol = options.tol > 0.0 ? options.tol : default_tolerance(*dom);
  const Kernel kern(*dom, params);
  const auto& interior = dom->interior;

  SolveResult res;
  res.monotone = true;

  ScalarField nxt = cur;  // Jacobi double buffer, unused by Gauss-Seidel
  const bool jacobi = options.scheme == SweepScheme::Jacobi;

  auto sweep_once = [&]() {
    double change = 0.0;
    if (jacobi) {
      kern.sweep(cur.values.data(), nxt.values.data(), options.parallel);
      for (std::size_t i : interior) {
        const double d = nxt.values[i] - cur.values[i];
        if (d < 0.0) res.monotone = false;
        change = std::max(change, std::fabs(d));
      }
      std::swap(cur.values, nxt.values);
    } else {
      // In-place updates re-read already-updated neighbours, so the amount
      // any node moved during the sweep bounds |T(u) - u| of the finished
      // sweep (T is 1-Lipschitz in the sup norm), same as the Jacobi change.
      double* v = cur.values.data();
      for (std::size_t i : interior) {
        const double nv = kern.node(v, i);
        const double d = nv - v[i];
        if (d < 0.0) res.monotone = false;
        change = std::max(change, std::fabs(d));
        v[i] = nv;
      }
    }
    return change;
  };

  // A change below tol certifies the residual, yet the iterate is still about
  // change * q/(1-q) from the fixed point.  The tail below runs the number of
  // extra sweeps that shrinks this estimated distance below tol, with q taken
  // as the most pessimistic of the last few observed change ratios.
  double change = std::numeric_limits<double>::infinity();
  double ratios[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  std::size_t ratio_at = 0;
  std::uint64_t extra = 0;
  bool certifying = false;

  for (std::uint64_t it = 0; it < options.max_iter; ++it) {
    const double prev = change;
    change = sweep_once();
    if (std::isfinite(prev) && prev > 0.0) ratios[ratio_at++ % 5] = change / prev;

    bool done = false;
    if (certifying) {
      done = --extra == 0;
    } else if (change <= tol) {
      double qhat = 0.0;
      for (double r : ratios) qhat = std::max(qhat, r);
      qhat = std::min(qhat, 0.9999);
      if (!options.certify || change == 0.0 || qhat <= 0.5) {
        done = true;  // distance <= q/(1-q) * tol <= tol already
      } else {
        // qhat > 0.5 makes the argument of the outer log exceed 1, so extra >= 1
        extra = static_cast<std::uint64_t>(
            std::ceil(std::log(qhat / (1.0 - qhat)) / std::log(1.0 / qhat)));
        certifying = true;
      }
    }
    if (done) {
      res.u = std::move(cur);
      res.iterations = it + 1;
      res.residual = residual(res.u, params);
      return res;
    }
  }

  res.u = std::move(cur);
  res.iterations = options.max_iter;
  res.residual = residual(res.u, params);
  if (res.residual <= tol) return res;  // converged, distance merely uncertified
  char detail[96];
  std::snprintf(detail, sizeof detail, " sweeps (residual %g, tolerance %g)", res.residual, tol);
  throw NonConvergence("solve_value: no fixed point within " + std::to_string(options.max_iter) +
                           detail,
                       options.max_iter, res.residual);
}

}  // namespace tow
