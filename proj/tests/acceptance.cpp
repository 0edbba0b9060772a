// Acceptance gate: thirteen end-to-end criteria covering the solver, the
// game/walk simulators and the regularity measurements.  Each criterion
// prints one [PASS]/[FAIL] line with the measured numbers; the exit code is
// the number of failures.
//
//   towlab_acceptance           run everything
//   towlab_acceptance --only 5  run a subset (repeatable)
//   towlab_acceptance --list    print the roster

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "support/chain_oracle.hpp"
#include "support/fixtures.hpp"
#include "tow/domain.hpp"
#include "tow/dpp.hpp"
#include "tow/field.hpp"
#include "tow/game.hpp"
#include "tow/params.hpp"
#include "tow/pde.hpp"
#include "tow/regularity.hpp"
#include "tow/rng.hpp"
#include "tow/strategy.hpp"
#include "tow/walks.hpp"

namespace {

using tow::GameParams;
using tow::ScalarField;
using tow::Shape;
using tow::SolveOptions;
using tow::SolveResult;

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Gauss-Seidel solve without the certified-distance tail; the bulk
// measurement solves only need residual <= tol.
SolveResult solve_gs(std::shared_ptr<const tow::DiscreteDomain> dom, const GameParams& gp,
                     double tol = 0.0) {
  SolveOptions o;
  o.tol = tol;
  o.scheme = tow::SweepScheme::GaussSeidel;
  o.certify = false;
  return tow::solve_value(std::move(dom), gp, o);
}

// Shared solves of the unit disk with F = 1, f = 1 (criteria 7, 8, 9, 11).
struct Lab {
  const towtest::DiskCase& disk(double epsilon) {
    auto it = disks_.find(epsilon);
    if (it == disks_.end()) it = disks_.emplace(epsilon, towtest::make_disk(4.0, epsilon)).first;
    return it->second;
  }
  const SolveResult& disk_solution(double epsilon) {
    auto it = sols_.find(epsilon);
    if (it == sols_.end()) {
      const auto& dc = disk(epsilon);
      it = sols_.emplace(epsilon, solve_gs(dc.dom, dc.params)).first;
    }
    return it->second;
  }

 private:
  std::map<double, towtest::DiskCase> disks_;
  std::map<double, SolveResult> sols_;
};

std::size_t interior_near(const tow::DiscreteDomain& dom, std::vector<double> x) {
  return dom.nearest_node_of(x, tow::NodeClass::Interior);
}

// Interior pairs at distance <= 10 epsilon, the admissible set of the local
// comparison.
std::vector<std::pair<std::size_t, std::size_t>> admissible_pairs(
    const tow::DiscreteDomain& dom, double epsilon, std::size_t count, std::uint64_t seed) {
  tow::CounterRng rng({seed, 0});
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> cand;
  while (pairs.size() < count) {
    const std::size_t x = dom.interior[rng.next_below(dom.interior.size())];
    cand.clear();
    tow::for_nodes_in_ball(dom, x, 10.0 * epsilon, [&](std::size_t j) {
      if (dom.cls(j) == tow::NodeClass::Interior && j != x) cand.push_back(j);
    });
    if (cand.empty()) continue;
    pairs.emplace_back(x, cand[rng.next_below(cand.size())]);
  }
  return pairs;
}

// --------------------------------------------------------------------------
// 1. The coarse interval fixture solves to its hand-computed fixed point.

Outcome c01_fixture(Lab&) {
  const auto fx = towtest::make_fixture_1d();
  SolveOptions o;
  o.tol = 1e-13;
  o.scheme = tow::SweepScheme::GaussSeidel;
  const auto res = tow::solve_value(fx.dom, fx.params, o);
  const double err = std::fabs(res.u.values[fx.mid] - 0.8125);
  return {err <= 1e-12,
          strf("u(0.5) = %.15g, |err| = %.2e (limit 1e-12), %llu sweeps", res.u.values[fx.mid],
               err, static_cast<unsigned long long>(res.iterations))};
}

// --------------------------------------------------------------------------
// 2. From the inf-F start with f > 0, every sweep is pointwise non-decreasing
//    on randomized small domains.

Outcome c02_monotone(Lab&) {
  tow::CounterRng rng({20260815, 0});
  int monotone = 0;
  std::uint64_t total_sweeps = 0;
  const int cases = 20;
  for (int k = 0; k < cases; ++k) {
    const int n = 1 + static_cast<int>(rng.next_below(2));
    const double p = 2.3 + 5.0 * rng.next_double();
    const double eps = 0.15 + 0.15 * rng.next_double();
    const double h = eps / static_cast<double>(4 + rng.next_below(2));
    std::vector<double> center(n);
    for (double& c : center) c = 0.4 * rng.next_double() - 0.2;

    const int kind = static_cast<int>(rng.next_below(3));
    std::vector<double> hw(n);
    for (double& w : hw) w = 0.5 + 0.5 * rng.next_double();
    const double rad = 0.5 + 0.5 * rng.next_double();
    const Shape shape = [&]() -> Shape {
      if (kind == 0) return Shape::box(center, hw);
      if (kind == 1) return Shape::ball(center, rad);
      const double inner = 0.2 + 0.1 * rng.next_double();
      const double outer = 0.75 + 0.25 * rng.next_double();
      return Shape::annulus(center, inner, outer);
    }();

    std::vector<double> fc(static_cast<std::size_t>(n) + 1);
    for (double& c : fc) c = 4.0 * rng.next_double() - 2.0;
    const double f0 = 0.1 + 1.9 * rng.next_double();
    const double f2 = rng.next_double();
    const auto gp = GameParams::create(p, n, eps);
    const auto dom = tow::build_domain(
        shape, gp, h,
        [fc](std::span<const double> x) {
          double v = fc[0];
          for (std::size_t i = 0; i < x.size(); ++i) v += fc[i + 1] * x[i];
          return v;
        },
        [f0, f2](std::span<const double> x) {
          double r2 = 0.0;
          for (double v : x) r2 += v * v;
          return f0 + f2 * r2;
        });

    SolveOptions o;
    o.tol = 1e-7;
    const auto res = tow::solve_value(dom, gp, o);
    monotone += res.monotone ? 1 : 0;
    total_sweeps += res.iterations;
  }
  return {monotone == cases, strf("%d/%d randomized domains monotone (%llu sweeps total)",
                                  monotone, cases,
                                  static_cast<unsigned long long>(total_sweeps))};
}

// --------------------------------------------------------------------------
// 3. Two initializations land on the same field within 10 tol.

std::shared_ptr<const tow::DiscreteDomain> uniqueness_domain() {
  const auto gp = GameParams::create(4.0, 2, 0.1);
  return tow::build_domain(Shape::ball({0.0, 0.0}, 1.0), gp, 0.025,
                           [](std::span<const double> x) { return x[0]; },
                           [](std::span<const double>) { return 1.0; });
}

Outcome c03_uniqueness(Lab&) {
  const auto gp = GameParams::create(4.0, 2, 0.1);
  const auto dom = uniqueness_domain();
  const double tol = 1e-9;
  SolveOptions lo;
  lo.tol = tol;
  const auto a = tow::solve_value(dom, gp, lo);
  SolveOptions hi = lo;
  hi.init = tow::field_from_boundary(dom, 50.0);
  const auto b = tow::solve_value(dom, gp, hi);
  const double diff = tow::sup_diff(a.u, b.u);
  return {diff <= 10.0 * tol,
          strf("disk eps=0.1 h=0.025: sup|u_low - u_high| = %.3e (limit %.0e)", diff, 10.0 * tol)};
}

// --------------------------------------------------------------------------
// 4. Comparison: raising f keeps v >= u; shifting F by c shifts u by c.

Outcome c04_comparison(Lab&) {
  const auto gp = GameParams::create(4.0, 2, 0.1);
  const double tol = 1e-9;
  const auto F = [](std::span<const double> x) { return x[0]; };
  const auto dom_u = tow::build_domain(Shape::ball({0.0, 0.0}, 1.0), gp, 0.025, F,
                                       [](std::span<const double>) { return 1.0; });
  const auto dom_f = tow::build_domain(Shape::ball({0.0, 0.0}, 1.0), gp, 0.025, F,
                                       [](std::span<const double>) { return 2.0; });
  const auto dom_c =
      tow::build_domain(Shape::ball({0.0, 0.0}, 1.0), gp, 0.025,
                        [](std::span<const double> x) { return x[0] + 2.25; },
                        [](std::span<const double>) { return 1.0; });
  SolveOptions o;
  o.tol = tol;
  const auto u = tow::solve_value(dom_u, gp, o);
  const auto v_f = tow::solve_value(dom_f, gp, o);
  const auto v_c = tow::solve_value(dom_c, gp, o);

  const auto mono = tow::verify_payoff_monotonicity(u.u, v_f.u, 10.0 * tol);
  const double shift_err = tow::sup_diff(v_c.u, tow::shifted(u.u, 2.25));
  const bool pass = mono.pass && shift_err <= 10.0 * tol;
  return {pass, strf("f+1: min(v-u) = %.3e (slack %.0e); F+2.25: sup|v-(u+c)| = %.3e (limit %.0e)",
                     mono.measured_constant, 10.0 * tol, shift_err, 10.0 * tol)};
}

// --------------------------------------------------------------------------
// 5. Greedy-vs-greedy Monte Carlo reproduces the fixed point, on the disk
//    against the solver and on small domains against the absorbing-chain
//    linear solve.

Outcome c05_game_value(Lab&) {
  std::string detail;
  bool pass = true;

  {  // disk vs solver
    const auto gp = GameParams::create(4.0, 2, 0.1);
    const auto dom = tow::build_domain(
        Shape::ball({0.0, 0.0}, 1.0), gp, 0.025,
        [](std::span<const double> x) { return 0.5 + 0.3 * x[0]; },
        [](std::span<const double>) { return 1.0; });
    const auto res = solve_gs(dom, gp, 1e-9);
    const std::size_t start = interior_near(*dom, {0.25, -0.1});
    const auto mc = tow::estimate_value_mc(dom, gp, res.u, start, 100'000, {777, 0});
    const double dev = std::fabs(mc.mean - res.u.values[start]);
    pass = pass && dev <= 4.0 * mc.std_error;
    detail += strf("disk |mc-u| = %.2e (4SE = %.2e)", dev, 4.0 * mc.std_error);
  }

  struct ChainCase {
    const char* label;
    Shape shape;
    tow::SpatialFn F, f;
    std::vector<double> start;
    std::uint64_t seed;
  };
  const std::vector<ChainCase> cases = {
      {"interval", Shape::box({0.5}, {0.5}),
       [](std::span<const double> x) { return x[0] * x[0]; },
       [](std::span<const double> x) { return 0.5 + x[0]; },
       {0.5},
       778},
      {"small disk", Shape::ball({0.0, 0.0}, 0.4),
       [](std::span<const double> x) { return 1.0 + 0.5 * x[0] - 0.25 * x[1]; },
       [](std::span<const double>) { return 0.8; },
       {0.0, 0.0},
       779},
  };
  for (const auto& cc : cases) {
    const int n = cc.shape.dim();
    const auto gp = GameParams::create(4.0, n, 0.25);
    const auto dom = tow::build_domain(cc.shape, gp, 0.0625, cc.F, cc.f);
    if (dom->interior.size() > 200) {
      return {false, strf("%s: %zu interior nodes exceed the oracle budget", cc.label,
                          dom->interior.size())};
    }
    SolveOptions o;
    o.tol = 1e-11;
    const auto res = tow::solve_value(dom, gp, o);
    const std::size_t start = interior_near(*dom, cc.start);
    const auto smax = tow::Strategy::greedy_max(res.u);
    const auto smin = tow::Strategy::greedy_min(res.u);
    const auto chain = towtest::solve_chain(*dom, gp, smax, smin, start);
    const auto mc = tow::estimate_value_mc(dom, gp, res.u, start, 50'000, {cc.seed, 0});
    const double dev = std::fabs(mc.mean - chain.expected_payoff);
    pass = pass && dev <= 4.0 * mc.std_error;
    detail += strf("; %s |mc-chain| = %.2e (4SE = %.2e)", cc.label, dev, 4.0 * mc.std_error);
  }
  return {pass, detail};
}

// --------------------------------------------------------------------------
// 6. Interval walk: the MC mean respects the 5 t0 / (alpha eps^2) bound and
//    matches the exact lattice chain.

Outcome c06_walk_bound(Lab&) {
  bool pass = true;
  double worst_bound_margin = -1e300;
  double worst_dev_se = 0.0;
  std::uint64_t cell = 0;
  for (const double t0 : {0.3, 0.5, 0.7}) {
    for (const double eps : {0.1, 0.05}) {
      const auto gp = GameParams::create(4.0, 1, eps);
      const auto mc = tow::walk_1d(t0, gp, 10'000, {4242, cell * 10'000});
      ++cell;
      const double bound = 5.0 * t0 / (gp.alpha * gp.eps2());
      const double oracle = towtest::walk_chain_expected_tau(t0, eps, gp.alpha);
      const double dev_se = std::fabs(mc.mean - oracle) / mc.std_error;
      pass = pass && mc.mean <= bound + 3.0 * mc.std_error && dev_se <= 4.0;
      worst_bound_margin = std::max(worst_bound_margin, mc.mean - bound);
      worst_dev_se = std::max(worst_dev_se, dev_se);
    }
  }
  return {pass, strf("6 cells: worst mean-bound = %.3g (must be <= 3SE), worst |mc-chain| = "
                     "%.2f SE (limit 4)",
                     worst_bound_margin, worst_dev_se)};
}

// --------------------------------------------------------------------------
// 7. Pull-vs-greedy stopping time scales like eps^-2: tau * eps^2 stable
//    within factor 2 across an eps family.

Outcome c07_tau_scaling(Lab& lab) {
  std::vector<double> scaled;
  std::string detail = "tau*eps^2:";
  std::uint64_t cell = 0;
  for (const double eps : {0.2, 0.1, 0.05}) {
    const auto& dc = lab.disk(eps);
    const auto& sol = lab.disk_solution(eps);
    const std::size_t start = interior_near(*dc.dom, {0.3, 0.0});
    const auto pull = tow::Strategy::pull_toward(dc.center);
    const auto greedy = tow::Strategy::greedy_min(sol.u);
    const auto mc = tow::estimate_stopping_time(dc.dom, dc.params, pull, greedy, start, 3000,
                                                {868, cell++ * 3000});
    scaled.push_back(mc.mean * eps * eps);
    detail += strf(" %.4g@eps=%g", scaled.back(), eps);
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  const double factor = *hi / *lo;
  detail += strf("; spread factor %.3f (limit 2)", factor);
  return {factor < 2.0, detail};
}

// --------------------------------------------------------------------------
// 8. Local comparison floor: u(x) >= (alpha/2)^20 u(y) over random admissible
//    pairs on a solved positive field.

Outcome c08_local_comparison(Lab& lab) {
  const auto& dc = lab.disk(0.1);
  const auto& sol = lab.disk_solution(0.1);
  const auto pairs = admissible_pairs(*dc.dom, dc.params.epsilon, 1000, 997);
  const auto rep = tow::verify_local_comparison(sol.u, dc.params, pairs);
  const double floor = std::pow(0.5 * dc.params.alpha, 20.0);
  return {rep.pass, strf("min ratio over %zu pairs = %.4f, floor (alpha/2)^20 = %.3e",
                         pairs.size(), rep.measured_constant, floor)};
}

// --------------------------------------------------------------------------
// 9. Harnack constant on the unit disk stays within factor 2 across the eps
//    family.

Outcome c09_harnack(Lab& lab) {
  std::vector<double> ks;
  std::string detail = "K:";
  for (const double eps : {0.1, 0.05, 0.025}) {
    const auto& dc = lab.disk(eps);
    const auto& sol = lab.disk_solution(eps);
    const auto rep = tow::verify_harnack(sol.u, dc.params, dc.center, 0.03);
    ks.push_back(rep.measured_constant);
    detail += strf(" %.4f@eps=%g", ks.back(), eps);
  }
  const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
  const double factor = *hi / *lo;
  detail += strf("; spread factor %.3f (limit 2)", factor);
  return {factor < 2.0, detail};
}

// --------------------------------------------------------------------------
// 10. Lipschitz constant stable within factor 2 across r in {2,4,8} eps and
//     across one eps halving (disk radius grows with the probe so the 6R
//     measurement ball stays inside the domain).

Outcome c10_lipschitz(Lab&) {
  auto bump_disk = [](double eps, double radius) {
    const auto gp = GameParams::create(4.0, 2, eps);
    const auto dom = tow::build_domain(Shape::ball({0.0, 0.0}, radius), gp, eps / 4.0,
                                       [](std::span<const double>) { return 1.0; },
                                       [](std::span<const double>) { return 1.0; });
    return std::make_pair(gp, solve_gs(dom, gp));
  };

  // One eps halving on fixed physical geometry and a fixed probe.
  std::vector<double> hs;
  for (const double eps : {0.1, 0.05}) {
    const auto [gp, sol] = bump_disk(eps, 1.5);
    const auto f_field = tow::running_payoff_field(sol.u.domain);
    const std::size_t a = interior_near(*sol.u.domain, {0.2, 0.0});
    hs.push_back(
        tow::verify_lipschitz(sol.u, f_field, gp, a, 0.2, 0.2).measured_constant);
  }
  const double halving_factor = std::max(hs[0], hs[1]) / std::min(hs[0], hs[1]);

  // Radius sweep at eps = 0.05 on a disk wide enough for the 6R ball of the
  // largest probe (R = 8 eps) around an off-center point, where the field has
  // a genuine gradient.
  const auto [gp, sol] = bump_disk(0.05, 2.9);
  const auto f_field = tow::running_payoff_field(sol.u.domain);
  const std::size_t a = interior_near(*sol.u.domain, {0.4, 0.0});
  std::vector<double> cs;
  std::string detail = "C(r):";
  for (const double r : {0.1, 0.2, 0.4}) {
    cs.push_back(tow::verify_lipschitz(sol.u, f_field, gp, a, r, 0.4).measured_constant);
    detail += strf(" %.4f@r=%g", cs.back(), r);
  }
  const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
  const double r_factor = *hi / *lo;
  detail += strf("; r-spread %.3f, halving spread %.3f (C = %.4f -> %.4f), limits 2", r_factor,
                 halving_factor, hs[0], hs[1]);
  return {r_factor < 2.0 && halving_factor < 2.0, detail};
}

// --------------------------------------------------------------------------
// 11. The global bound sup u / (sup F + sup f) is epsilon-independent up to
//     factor 2 across the family of criterion 9.

Outcome c11_global_bound(Lab& lab) {
  std::vector<double> ratios;
  std::string detail = "sup u/(sup F + sup f):";
  for (const double eps : {0.1, 0.05, 0.025}) {
    const auto& dc = lab.disk(eps);
    const auto& sol = lab.disk_solution(eps);
    const auto rep = tow::verify_global_bound(sol.u, dc.params);
    ratios.push_back(rep.measured_constant);
    detail += strf(" %.4f@eps=%g", ratios.back(), eps);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double factor = *hi / *lo;
  detail += strf("; spread factor %.3f (limit 2)", factor);
  return {factor < 2.0, detail};
}

// --------------------------------------------------------------------------
// 12. Manufactured quadratic solution: the game value converges toward
//     u* = A - c|x|^2, the finite-difference oracle confirms the operator
//     identity at off-origin probes, and the unscaled payoff does not
//     converge to u*.

Outcome c12_convergence(Lab&) {
  const auto gp = GameParams::create(4.0, 2, 0.2);
  const auto sol = tow::make_quadratic_solution(gp, 1.0, 1.0);
  const Shape shape = Shape::ball({0.0, 0.0}, 1.0);

  tow::StudyOptions opts;
  opts.tol = 1e-8;
  opts.scheme = tow::SweepScheme::GaussSeidel;
  const std::vector<double> eps = {0.2, 0.1, 0.05};
  const auto rows = tow::convergence_study(sol, shape, 4.0, eps, opts);
  const bool shrinks = rows.back().sup_error < rows.front().sup_error;

  // The solution is quadratic, so the centered stencil is exact up to
  // roundoff; h_fd^2 is a generous ceiling.
  tow::CounterRng rng({1212, 0});
  const double h_fd = 1e-3;
  int ok = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double rad = 0.2 + 0.6 * rng.next_double();
    const double ang = 6.283185307179586 * rng.next_double();
    const std::vector<double> x = {rad * std::cos(ang), rad * std::sin(ang)};
    const double fd = tow::normalized_plaplacian_fd(sol.u_star, x, h_fd, gp);
    const double err = std::fabs(fd + 1.0);
    worst = std::max(worst, err);
    ok += err <= h_fd * h_fd ? 1 : 0;
  }

  tow::StudyOptions control = opts;
  control.scale_payoff = false;
  const std::vector<double> eps_nc = {0.2, 0.05};
  const auto nc = tow::convergence_study(sol, shape, 4.0, eps_nc, control);
  const double scaled_fine = rows.back().sup_error;
  const double control_fine = nc.back().sup_error;
  const bool control_fails = control_fine > 5.0 * scaled_fine && control_fine > 0.05;

  const bool pass = shrinks && ok == 100 && control_fails;
  return {pass,
          strf("sup_err %.4f -> %.4f -> %.4f; FD probes 100/100 ok (worst %.1e <= 1e-6); "
               "unscaled control err %.3f vs scaled %.4f",
               rows[0].sup_error, rows[1].sup_error, rows[2].sup_error, worst, control_fine,
               scaled_fine)};
}

// --------------------------------------------------------------------------
// 13. Cylinder walk: the probability of not leaving through the bottom is
//     non-decreasing in the start height within noise, with a non-negative
//     linear trend in (t + eps).

Outcome c13_cylinder(Lab&) {
  const auto gp = GameParams::create(4.0, 2, 0.1);
  const std::vector<double> ts = {0.2, 0.6, 1.0, 1.4, 1.8};
  std::vector<tow::McResult> ps;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    ps.push_back(tow::cylinder_walk(ts[j], 1.0, gp, 10'000, {1313, j * 10'000}));
  }
  bool nondecreasing = true;
  double worst_drop = 0.0;
  for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
    const double drop = ps[j].mean - ps[j + 1].mean;
    const double noise = 3.0 * std::hypot(ps[j].std_error, ps[j + 1].std_error);
    worst_drop = std::max(worst_drop, drop);
    nondecreasing = nondecreasing && drop <= noise;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double x = ts[j] + gp.epsilon;
    sx += x;
    sy += ps[j].mean;
    sxx += x * x;
    sxy += x * ps[j].mean;
  }
  const double nn = static_cast<double>(ts.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const bool pass = nondecreasing && slope >= 0.0;
  return {pass, strf("p_fail %.3f..%.3f over t, worst adjacent drop %.4f (3SE noise), "
                     "fit slope %.4f (must be >= 0)",
                     ps.front().mean, ps.back().mean, worst_drop, slope)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)(Lab&);
};

const std::vector<Criterion>& roster() {
  static const std::vector<Criterion> list = {
      {1, "tiny-grid fixed point", c01_fixture},
      {2, "monotone iteration", c02_monotone},
      {3, "uniqueness across inits", c03_uniqueness},
      {4, "payoff comparison", c04_comparison},
      {5, "game value = fixed point", c05_game_value},
      {6, "interval walk bound", c06_walk_bound},
      {7, "stopping-time scaling", c07_tau_scaling},
      {8, "local comparison floor", c08_local_comparison},
      {9, "Harnack stability", c09_harnack},
      {10, "Lipschitz stability", c10_lipschitz},
      {11, "global bound stability", c11_global_bound},
      {12, "manufactured convergence", c12_convergence},
      {13, "cylinder exit monotonicity", c13_cylinder},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--list") {
      for (const auto& c : roster()) std::printf("%2d  %s\n", c.id, c.name);
      return 0;
    }
    if (arg == "--only" && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
      continue;
    }
    std::fprintf(stderr, "usage: towlab_acceptance [--list] [--only K]...\n");
    return 2;
  }

  Lab lab;
  int failures = 0;
  int ran = 0;
  for (const auto& crit : roster()) {
    if (!only.empty() && std::find(only.begin(), only.end(), crit.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit.fn(lab);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-27s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL", crit.id, crit.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("acceptance: %d/%d criteria passed\n", ran - failures, ran);
  return failures;
}
