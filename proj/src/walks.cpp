#include "tow/walks.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "tow/errors.hpp"

namespace tow {

namespace {

McResult reduce_to_result(const std::vector<double>& vals) {
  double sum = 0.0;
  for (double x : vals) sum += x;
  const double mean = sum / static_cast<double>(vals.size());
  double ss = 0.0;
  for (double x : vals) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / static_cast<double>(vals.size() - 1)) /
                    std::sqrt(static_cast<double>(vals.size()));
  return {mean, se, vals.size()};
}

template <class OneWalk>
McResult walk_loop(std::uint64_t N, const OneWalk& one) {
  std::vector<double> vals(N, 0.0);
  std::vector<std::exception_ptr> errs(N);
  const auto m = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      vals[i] = one(static_cast<std::uint64_t>(i));
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (const auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  return reduce_to_result(vals);
}

}  // namespace

void walk_1d_bounds(double t0, double epsilon, std::int64_t& k_lo, std::int64_t& k_hi) {
  // Absorbed below once t0 + k*eps <= 0, above once >= 1; the 1e-9 slack keeps
  // exact multiples of eps on the absorbing side despite rounding.
  k_lo = static_cast<std::int64_t>(std::floor(-t0 / epsilon + 1e-9));
  k_hi = static_cast<std::int64_t>(std::ceil((1.0 - t0) / epsilon - 1e-9));
}

McResult walk_1d(double t0, const GameParams& params, std::uint64_t N, RngSpec rng,
                 std::uint64_t step_cap) {
  if (!(t0 > 0.0) || !(t0 < 1.0)) {
    throw ValidationError("walk_1d: t0 must lie in (0, 1), got " + std::to_string(t0));
  }
  if (!(params.epsilon < t0)) {
    throw ValidationError("walk_1d: need epsilon < t0, got epsilon = " +
                          std::to_string(params.epsilon) + ", t0 = " + std::to_string(t0));
  }
  if (N < 100) throw ValidationError("walk_1d: N must be >= 100");
  std::int64_t k_lo = 0, k_hi = 0;
  walk_1d_bounds(t0, params.epsilon, k_lo, k_hi);
  const double half_alpha = params.half_alpha();
  const double alpha = params.alpha;

  return walk_loop(N, [&](std::uint64_t i) {
    CounterRng gen(RngSpec{rng.master_seed, rng.stream_id + i});
    std::int64_t k = 0;
    std::uint64_t steps = 0;
    while (k > k_lo && k < k_hi) {
      if (steps >= step_cap) {
        throw StepLimitExceeded("walk_1d exceeded " + std::to_string(step_cap) + " steps");
      }
      const double u = gen.next_double();
      if (u < half_alpha) {
        --k;
      } else if (u < alpha) {
        ++k;
      }
      ++steps;
    }
    return static_cast<double>(steps);
  });
}

McResult cylinder_walk(double t, double r, const GameParams& params, std::uint64_t N, RngSpec rng,
                       std::uint64_t step_cap) {
  if (!(r > 0.0)) throw ValidationError("cylinder_walk: r must be > 0");
  if (!(t >= 0.0) || !(t <= 2.0 * r)) {
    throw ValidationError("cylinder_walk: start height t must lie in [0, 2r]");
  }
  if (!(params.epsilon < r)) {
    throw ValidationError("cylinder_walk: epsilon must be < r for the cylinder to be resolvable");
  }
  if (N < 100) throw ValidationError("cylinder_walk: N must be >= 100");

  const double half_alpha = params.half_alpha();
  const double alpha = params.alpha;
  const double eps = params.epsilon;
  const double top = 2.0 * r;
  const double side2 = 4.0 * r * r;
  const int n = params.n;

  return walk_loop(N, [&](std::uint64_t i) {
    CounterRng gen(RngSpec{rng.master_seed, rng.stream_id + i});
    std::vector<double> x(n, 0.0), jump(n, 0.0);
    double height = t;
    for (std::uint64_t steps = 0;; ++steps) {
      if (height < 0.0) return 0.0;  // bottom exit: the good event
      double norm2 = 0.0;
      for (double c : x) norm2 += c * c;
      if (height > top || norm2 > side2) return 1.0;  // top or mantle
      if (steps >= step_cap) {
        throw StepLimitExceeded("cylinder_walk exceeded " + std::to_string(step_cap) + " steps");
      }
      const double u = gen.next_double();
      if (u < half_alpha) {
        height += eps;
      } else if (u < alpha) {
        height -= eps;
      } else {
        gen.sample_in_ball(eps, jump);
        for (int a = 0; a < n; ++a) x[a] += jump[a];
      }
    }
  });
}

}  // namespace tow
