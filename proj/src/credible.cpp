#include "svgp/credible.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "svgp/errors.hpp"
#include "svgp/linalg.hpp"
#include "svgp/rng.hpp"

namespace svgp {

namespace {

constexpr std::uint64_t kRadiusStream = 2;
constexpr std::uint64_t kDistanceStream = 4;

double empirical_quantile(std::vector<double>& draws, double level) {
  const long count = static_cast<long>(draws.size());
  long k = static_cast<long>(std::ceil(level * count));
  k = std::min(std::max(k, 1L), count);
  std::nth_element(draws.begin(), draws.begin() + (k - 1), draws.end());
  return draws[k - 1];
}

}  // namespace

double credible_radius(const VariationalPosterior& posterior, double gamma,
                       const RadiusOptions& options, std::uint64_t seed) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw ConfigError("gamma: must be in (0, 1), got " + std::to_string(gamma));
  if (options.mc_samples < 1000)
    throw ConfigError("mc_samples: must be >= 1000 for a usable quantile, got " +
                      std::to_string(options.mc_samples));
  const long S = options.mc_samples;
  std::vector<double> draws(S);
  Rng rng(derive_stream(seed, kRadiusStream));

  if (posterior.has_spectral_path()) {
    const long m = posterior.m();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> head(posterior.head_covariance());
    if (head.info() != Eigen::Success)
      throw NumericError("credible radius: eigendecomposition of A failed");
    const Eigen::VectorXd head_w = head.eigenvalues().cwiseMax(0.0);
    const Spectrum& spectrum = posterior.kernel().spectrum();
    const long tail_terms = std::max(options.tail_terms, 0L);
    Eigen::VectorXd tail_w(tail_terms);
    for (long t = 0; t < tail_terms; ++t)
      tail_w[t] = spectrum.eigenvalue(m + 1 + t);
    // beyond the explicit terms the tail enters through its exact mean; its
    // fluctuation is orders below the quantile's own Monte Carlo error
    const double tail_rest = spectrum.tail(m + tail_terms);
    for (long s = 0; s < S; ++s) {
      double q = tail_rest;
      for (long i = 0; i < m; ++i) {
        const double z = rng.normal();
        q += head_w[i] * z * z;
      }
      for (long t = 0; t < tail_terms; ++t) {
        const double z = rng.normal();
        q += tail_w[t] * z * z;
      }
      draws[s] = q;
    }
  } else {
    const Eigen::VectorXd nodes =
        stratified_nodes(options.quad_points, derive_stream(seed, kRadiusStream + 16));
    const Eigen::MatrixXd cov = posterior.covariance(nodes);
    const Eigen::LLT<Eigen::MatrixXd> llt =
        jittered_llt(cov, "posterior covariance (radius quadrature)").llt;
    const long q = options.quad_points;
    const long batch = 256;
    Eigen::MatrixXd Z(q, batch);
    for (long s0 = 0; s0 < S; s0 += batch) {
      const long width = std::min(batch, S - s0);
      for (long s = 0; s < width; ++s)
        for (long i = 0; i < q; ++i) Z(i, s) = rng.normal();
      const Eigen::MatrixXd centered = llt.matrixL() * Z.leftCols(width);
      for (long s = 0; s < width; ++s)
        draws[s0 + s] = centered.col(s).squaredNorm() / static_cast<double>(q);
    }
  }
  return std::sqrt(empirical_quantile(draws, 1.0 - gamma));
}

double l2_distance_to_truth(const VariationalPosterior& posterior,
                            const TrueFunction& truth, long quad_points,
                            std::uint64_t seed) {
  if (posterior.has_spectral_path()) {
    const long m = posterior.m();
    double head = 0.0;
    for (long j = 1; j <= m; ++j) {
      const double diff = posterior.head_mean()[j - 1] - truth.coefficient(j);
      head += diff * diff;
    }
    return std::sqrt(head + truth.tail_squared_beyond(m));
  }
  const Eigen::VectorXd nodes =
      stratified_nodes(quad_points, derive_stream(seed, kDistanceStream));
  const Eigen::VectorXd diff = posterior.mean(nodes) - truth.eval(nodes);
  return std::sqrt(diff.squaredNorm() / static_cast<double>(quad_points));
}

int coverage_indicator(const VariationalPosterior& posterior, const TrueFunction& truth,
                       double gamma, double blowup, const RadiusOptions& options,
                       std::uint64_t seed) {
  if (!(blowup > 0.0)) throw ConfigError("blowup: must be > 0");
  const double rho = credible_radius(posterior, gamma, options, seed);
  const double dist =
      l2_distance_to_truth(posterior, truth, options.quad_points, seed);
  return dist <= blowup * rho ? 1 : 0;
}

namespace {

PointwiseBand band_from(const Eigen::VectorXd& mean, Eigen::VectorXd var, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw ConfigError("gamma: must be in (0, 1), got " + std::to_string(gamma));
  PointwiseBand band;
  band.mean = mean;
  band.sd = var.cwiseMax(0.0).cwiseSqrt();
  const double z = normal_quantile(1.0 - gamma / 2.0);
  band.lower = band.mean - z * band.sd;
  band.upper = band.mean + z * band.sd;
  return band;
}

}  // namespace

PointwiseBand pointwise_band(const VariationalPosterior& posterior,
                             const Eigen::VectorXd& grid, double gamma) {
  return band_from(posterior.mean(grid), posterior.variance(grid), gamma);
}

PointwiseBand pointwise_band(const ExactPosterior& posterior,
                             const Eigen::VectorXd& grid, double gamma) {
  return band_from(posterior.mean(grid), posterior.variance(grid), gamma);
}

}  // namespace svgp
