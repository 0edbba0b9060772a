#pragma once

// Shared test configurations with hand-derived expected values.

#include <cstddef>
#include <memory>

#include "tow/domain.hpp"
#include "tow/params.hpp"

namespace towtest {

/// Interval fixture: Omega = (0,1), p = 4, n = 1, epsilon = 0.5 and the
/// deliberately coarse h = 0.5 (relaxed), F(x) = x, f = 1.  The grid then has
/// one interior node at 0.5 and strip nodes at 0 and 1, and every expectation
/// is computable by hand:
///   alpha = 0.4, beta = 0.6
///   one sweep from u = 0 inside:  0.2*(1+0) + 0.6*(1/3) + 0.25 = 0.65
///   fixed point: c = 0.65 + 0.2 c  =>  u(0.5) = 0.8125
///   greedy-vs-greedy stopping time: exit probability per round 0.8,
///   E[tau] = 1.25
struct Fixture1D {
  tow::GameParams params;
  std::shared_ptr<const tow::DiscreteDomain> dom;
  std::size_t mid = 0;    // node at 0.5
  std::size_t left = 0;   // strip node at 0.0
  std::size_t right = 0;  // strip node at 1.0
};

Fixture1D make_fixture_1d();

/// Unit-disk configuration (F = 1, f = 1) used by several 2-D tests.
struct DiskCase {
  tow::GameParams params;
  std::shared_ptr<const tow::DiscreteDomain> dom;
  std::size_t center = 0;
};

DiskCase make_disk(double p, double epsilon, double radius = 1.0, double F_const = 1.0,
                   double f_const = 1.0);

}  // namespace towtest
