#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

#include "svgp/truth.hpp"

namespace svgp {

struct Dataset {
  Eigen::VectorXd x;  // design points in [-pi, pi]
  Eigen::VectorXd y;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  long n() const { return x.size(); }
};

// x_i ~ U[-pi, pi], y_i = f0(x_i) + sigma * eps_i, eps_i ~ N(0,1).
// Draws are interleaved per observation (x_i then eps_i), so datasets with
// the same seed and nested n share a common prefix. Bit-reproducible given
// (truth, n, sigma, seed).
Dataset sample_dataset(const TrueFunction& truth, long n, double sigma,
                       std::uint64_t seed);

// Header "x,y", one row per observation, 17 significant digits.
void write_dataset_csv(const Dataset& data, std::ostream& os);

}  // namespace svgp
