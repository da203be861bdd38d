#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "svgp/rng.hpp"

using namespace svgp;

TEST_SUITE("rng") {
  TEST_CASE("normal quantile matches reference values") {
    // Reference quantiles of the standard normal (tabulated to 15 digits).
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quantile(0.975) ==
          doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(normal_quantile(0.025) ==
          doctest::Approx(-1.959963984540054).epsilon(1e-9));
    CHECK(normal_quantile(0.8413447460685429) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(normal_quantile(0.9986501019683699) ==
          doctest::Approx(3.0).epsilon(1e-8));
    CHECK(normal_quantile(0.99) == doctest::Approx(2.3263478740408408).epsilon(1e-9));
    CHECK(normal_quantile(1e-9) == doctest::Approx(-5.997807015008182).epsilon(1e-7));
  }

  TEST_CASE("normal quantile symmetry and monotonicity") {
    const double ps[] = {1e-6, 0.01, 0.2, 0.35, 0.5, 0.77, 0.999};
    double prev = -1e300;
    for (double p : ps) {
      CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p))
                                      .epsilon(1e-10)
                                      .scale(1.0));
      CHECK(normal_quantile(p) > prev);
      prev = normal_quantile(p);
    }
  }

  TEST_CASE("raw engine is the standard mt19937_64 stream") {
    Rng rng(42);
    std::mt19937_64 reference(42);
    for (int i = 0; i < 5; ++i) CHECK(rng.next_u64() == reference());
  }

  TEST_CASE("uniform draws live strictly inside (0,1) and have the right mean") {
    Rng rng(7);
    const long n = 100000;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
      const double u = rng.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    const double se = 1.0 / std::sqrt(12.0 * n);
    CHECK(std::abs(sum / n - 0.5) < 4.0 * se);
  }

  TEST_CASE("uniform(a,b) respects bounds") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
      const double u = rng.uniform(-3.0, -1.0);
      CHECK(u > -3.0);
      CHECK(u < -1.0);
    }
  }

  TEST_CASE("normal draws have standard moments") {
    Rng rng(11);
    const long n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
      const double z = rng.normal();
      sum += z;
      sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / double(n)));
  }

  TEST_CASE("uniform_index is unbiased over small ranges") {
    Rng rng(13);
    const long n = 60000;
    std::vector<long> counts(6, 0);
    for (long i = 0; i < n; ++i) {
      const std::uint64_t k = rng.uniform_index(6);
      REQUIRE(k < 6);
      ++counts[static_cast<size_t>(k)];
    }
    const double expected = n / 6.0;
    const double se = std::sqrt(expected * (1.0 - 1.0 / 6.0));
    for (long c : counts) CHECK(std::abs(c - expected) < 5.0 * se);
  }

  TEST_CASE("derive_stream separates substreams deterministically") {
    CHECK(derive_stream(123, 1) == derive_stream(123, 1));
    CHECK(derive_stream(123, 1) != derive_stream(123, 2));
    CHECK(derive_stream(123, 1) != derive_stream(124, 1));
    // streams seeded from adjacent seeds do not collide on a small grid
    std::vector<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 64; ++s)
      for (std::uint64_t t = 0; t < 8; ++t) seen.push_back(derive_stream(s, t));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }

  TEST_CASE("identically seeded generators reproduce the same sequence") {
    Rng a(20260815), b(20260815);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  }
}
