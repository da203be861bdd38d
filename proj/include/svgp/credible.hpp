#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "svgp/posterior.hpp"
#include "svgp/truth.hpp"

namespace svgp {

struct RadiusOptions {
  long mc_samples = 100000;  // < 1000 rejected (quantile too noisy)
  long quad_points = 4096;   // grid-path quadrature nodes
  long tail_terms = 512;     // spectral path: explicit tail draws past m; the
                             // remaining tail enters through its exact mean
};

// (1-gamma) Monte Carlo quantile of ||f - fhat|| under the posterior.
// Population-spectral fits use the coefficient law: the head quadratic form
// through the eigenvalues of A plus independent lambda_j chi^2_1 tail terms.
// Everything else samples posterior functions on stratified-uniform nodes and
// averages squares. Deterministic given seed.
double credible_radius(const VariationalPosterior& posterior, double gamma,
                       const RadiusOptions& options, std::uint64_t seed);

// ||fhat - f0||_{L2(mu)}: exact coefficient arithmetic on the spectral path
// (head difference + truth tail), quadrature of (fhat - f0)^2 otherwise.
double l2_distance_to_truth(const VariationalPosterior& posterior,
                            const TrueFunction& truth, long quad_points,
                            std::uint64_t seed);

// 1 iff l2_distance_to_truth <= blowup * radius.
int coverage_indicator(const VariationalPosterior& posterior, const TrueFunction& truth,
                       double gamma, double blowup, const RadiusOptions& options,
                       std::uint64_t seed);

struct PointwiseBand {
  Eigen::VectorXd mean, sd, lower, upper;
};

// mean(x) +- z_{1-gamma/2} sd(x) per grid point.
PointwiseBand pointwise_band(const VariationalPosterior& posterior,
                             const Eigen::VectorXd& grid, double gamma);
PointwiseBand pointwise_band(const ExactPosterior& posterior,
                             const Eigen::VectorXd& grid, double gamma);

}  // namespace svgp
