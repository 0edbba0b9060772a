#pragma once

#include <cstdint>
#include <span>

namespace tow {

/// Names one reproducible random stream.  Equal specs yield equal sequences on
/// every platform and thread count; estimators give game i the stream
/// (master_seed, stream_id + i), so per-game results do not depend on how the
/// games are scheduled.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Counter-style generator: output k is a bit mix of (stream base, k), so
/// streams are cheap to split and advancing is branch-free.  The mix is the
/// splitmix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(RngSpec spec);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 random bits.
  double next_double();

  /// Uniform integer in [0, n), unbiased (rejection).  n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double next_gaussian();

  /// Uniform point in the closed ball of `radius` around the origin
  /// (gaussian direction, radius scaled by U^(1/dim)).
  void sample_in_ball(double radius, std::span<double> out);

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace tow
