#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "tow/rng.hpp"

using tow::CounterRng;
using tow::RngSpec;

TEST_CASE("equal specs replay, different specs diverge") {
  CounterRng a({42, 7});
  CounterRng b({42, 7});
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c({42, 8});
  CounterRng d({43, 7});
  int same_c = 0, same_d = 0;
  CounterRng a2({42, 7});
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t r = a2.next_u64();
    if (r == c.next_u64()) ++same_c;
    if (r == d.next_u64()) ++same_d;
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("next_double lies in [0,1) with the right mean and variance") {
  CounterRng rng({1, 0});
  const int N = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / N;
  const double var = sum2 / N - mean * mean;
  // sd of the sample mean is 1/sqrt(12 N); allow 4 sigma
  CHECK(std::fabs(mean - 0.5) < 4.0 / std::sqrt(12.0 * N));
  CHECK(std::fabs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("next_below is unbiased across a non-power-of-two range") {
  CounterRng rng({9, 3});
  const std::uint64_t n = 7;
  const int N = 140000;
  std::vector<int> counts(n, 0);
  for (int i = 0; i < N; ++i) {
    const std::uint64_t k = rng.next_below(n);
    REQUIRE(k < n);
    ++counts[k];
  }
  const double expect = static_cast<double>(N) / n;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // chi-square with 6 degrees of freedom; 22.5 is roughly the 0.1% tail
  CHECK(chi2 < 22.5);
}

TEST_CASE("gaussian moments") {
  CounterRng rng({5, 11});
  const int N = 200000;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 0; i < N; ++i) {
    const double g = rng.next_gaussian();
    s1 += g;
    s2 += g * g;
    s3 += g * g * g;
  }
  CHECK(std::fabs(s1 / N) < 4.0 / std::sqrt(static_cast<double>(N)));
  CHECK(std::fabs(s2 / N - 1.0) < 0.02);
  CHECK(std::fabs(s3 / N) < 0.05);
}

TEST_CASE("ball samples stay inside and fill the radius") {
  CounterRng rng({77, 0});
  for (int dim : {1, 2, 3}) {
    const double radius = 0.25;
    std::vector<double> x(dim);
    double max_norm = 0.0;
    double mean_norm2 = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
      rng.sample_in_ball(radius, x);
      double n2 = 0.0;
      for (double v : x) n2 += v * v;
      const double norm = std::sqrt(n2);
      CHECK(norm <= radius * (1.0 + 1e-12));
      max_norm = std::max(max_norm, norm);
      mean_norm2 += n2;
    }
    mean_norm2 /= N;
    CHECK(max_norm > 0.98 * radius);
    // E||X||^2 = r^2 n/(n+2) for the uniform ball
    const double expect = radius * radius * dim / (dim + 2.0);
    CHECK(mean_norm2 == doctest::Approx(expect).epsilon(0.03));
  }
}
