#pragma once

#include <cstdint>

#include "tow/game.hpp"
#include "tow/params.hpp"
#include "tow/rng.hpp"

namespace tow {

/// Auxiliary walk on the unit interval: from t0 (epsilon < t0 < 1) the
/// position moves by +-epsilon with probability alpha/2 each and stays put
/// with probability beta, stopping on leaving (0, 1).  Runs on the integer lattice
/// t0 + k * epsilon, so absorption thresholds are computed once and exactly.
/// Returns the Monte Carlo mean and standard error of the stopping time
/// (number of rounds, stays included) over N walks on streams
/// rng.stream_id .. rng.stream_id + N - 1.
McResult walk_1d(double t0, const GameParams& params, std::uint64_t N, RngSpec rng,
                 std::uint64_t step_cap = kDefaultStepCap);

/// Absorption thresholds of the lattice walk: the walk stops when the step
/// count k reaches k_lo (position <= 0) or k_hi (position >= 1).
void walk_1d_bounds(double t0, double epsilon, std::int64_t& k_lo, std::int64_t& k_hi);

/// Walk in the cylinder B_2r(0) x [0, 2r] started at (0, t): with probability
/// alpha/2 each the time coordinate moves +-epsilon, with probability beta the
/// space coordinate jumps uniformly in the epsilon-ball.  Estimates the
/// probability of NOT exiting through the bottom (t < 0), i.e. of leaving
/// first through the top or the mantle.
McResult cylinder_walk(double t, double r, const GameParams& params, std::uint64_t N, RngSpec rng,
                       std::uint64_t step_cap = kDefaultStepCap);

}  // namespace tow
