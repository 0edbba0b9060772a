#include "tow/rng.hpp"

#include <cmath>

#include "tow/errors.hpp"

namespace tow {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

CounterRng::CounterRng(RngSpec spec) {
  base_ = mix64(spec.master_seed ^ mix64(spec.stream_id * kGolden + 0xD1B54A32D192ED03ull));
}

std::uint64_t CounterRng::next_u64() {
  counter_ += kGolden;
  return mix64(base_ + counter_);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  if (n == 0) throw ValidationError("next_below: n must be > 0");
  const std::uint64_t min = (0ull - n) % n;  // reject the short final cycle
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x < min);
  return x % n;
}

double CounterRng::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u1;
  do {
    u1 = next_double();
  } while (u1 == 0.0);
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 6.283185307179586476925286766559 * u2;
  cached_gaussian_ = r * std::sin(t);
  has_cached_gaussian_ = true;
  return r * std::cos(t);
}

void CounterRng::sample_in_ball(double radius, std::span<double> out) {
  const auto n = out.size();
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = next_gaussian();
      norm2 += out[i] * out[i];
    }
  } while (norm2 == 0.0);
  const double r = radius * std::pow(next_double(), 1.0 / static_cast<double>(n));
  const double scale = r / std::sqrt(norm2);
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

}  // namespace tow
