#pragma once

#include <cstdint>
#include <random>

namespace svgp {

// splitmix64 step; used to derive independent substreams from a base seed.
std::uint64_t splitmix64(std::uint64_t x);

// Substream seed for (seed, stream). Distinct streams of the same replicate
// (dataset noise, radius Monte Carlo, subset sampling, quadrature nodes)
// must not share draws.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

// Quantile function of N(0,1) via Wichura's PPND16 rational approximation.
// Absolute error < 1e-8 on (0,1); p outside (0,1) returns +-infinity.
double normal_quantile(double p);

// Deterministic random source: mt19937_64 (output sequence pinned by the
// C++ standard) with inverse-CDF Gaussians, so every stream of draws is
// bit-reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on (0,1): 53-bit mantissa, strictly inside the open interval.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() { return normal_quantile(uniform()); }

  // Uniform integer in [0, n), n >= 1; rejection sampling, unbiased.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

}  // namespace svgp
