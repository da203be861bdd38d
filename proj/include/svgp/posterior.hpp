#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "svgp/dataset.hpp"
#include "svgp/inducing.hpp"
#include "svgp/kernel.hpp"

namespace svgp {

// Variational posterior with inducing variables u: the optimal Gaussian
// approximation has mean(x) = k_xu' B^{-1} K_uf y with
// B = sigma^2 K_uu + K_uf K_fu, and covariance
//   khat(x,y) = k(x,y) - k_xu' K_uu^{-1} k_yu + sigma^2 k_xu' B^{-1} k_yu.
// For the population-spectral strategy the basis-coefficient law of f - fhat
// is exactly N(0, A) on the head (A = (Lambda^{-1} + sigma^{-2} Phi'Phi)^{-1})
// plus the untouched prior tail, which this class exposes as a fast path.
class VariationalPosterior {
 public:
  static VariationalPosterior fit(const SpectralKernel& kernel, const Dataset& data,
                                  InducingBlocks blocks);

  const InducingBlocks& blocks() const { return blocks_; }
  const SpectralKernel& kernel() const { return *kernel_; }
  const Eigen::VectorXd& weights() const { return weights_; }  // a* with mean = k_xu' a*
  double sigma() const { return sigma_; }
  long n() const { return n_; }
  long m() const { return blocks_.m; }

  // General path, any strategy.
  Eigen::VectorXd mean(const Eigen::VectorXd& pts) const;
  Eigen::VectorXd variance(const Eigen::VectorXd& pts) const;
  Eigen::MatrixXd covariance(const Eigen::VectorXd& pts) const;

  // Spectral fast path, population-spectral blocks only.
  bool has_spectral_path() const { return spectral_; }
  const Eigen::MatrixXd& head_covariance() const;  // A, m x m
  const Eigen::VectorXd& head_mean() const;        // <fhat, phi_j>, j = 1..m
  Eigen::VectorXd spectral_mean(const Eigen::VectorXd& pts) const;
  Eigen::VectorXd spectral_variance(const Eigen::VectorXd& pts) const;

  // Psi-mean of ||f - fhat||^2. Spectral path: trace(A) plus the closed-form
  // eigenvalue tail (beyond the series truncation included). General path:
  // quadrature average of khat(x,x) over stratified-uniform nodes.
  double l2_spread() const;
  double l2_spread_quadrature(long quad_points, std::uint64_t seed) const;

  // Joint draws on a grid, rows = draws; deterministic given seed.
  Eigen::MatrixXd sample_on_grid(const Eigen::VectorXd& grid, long count,
                                 std::uint64_t seed) const;

 private:
  const SpectralKernel* kernel_ = nullptr;
  InducingBlocks blocks_;
  double sigma_ = 0.0;
  long n_ = 0;
  Eigen::VectorXd weights_;      // B^{-1} K_uf y
  Eigen::LLT<Eigen::MatrixXd> B_llt_;    // of sigma^2 K_uu + K_uf K_fu (+ridge)
  Eigen::LLT<Eigen::MatrixXd> Kuu_llt_;  // of K_uu (+ridge)
  bool spectral_ = false;
  Eigen::MatrixXd A_;            // head coefficient covariance
  Eigen::VectorXd head_mean_;
};

// Conjugate exact posterior (the m = n reference).
class ExactPosterior {
 public:
  static ExactPosterior fit(const SpectralKernel& kernel, const Dataset& data);

  Eigen::VectorXd mean(const Eigen::VectorXd& pts) const;
  Eigen::VectorXd variance(const Eigen::VectorXd& pts) const;
  Eigen::MatrixXd covariance(const Eigen::VectorXd& pts) const;
  double log_marginal() const;  // log N(y; 0, K_ff + sigma^2 I)

 private:
  const SpectralKernel* kernel_ = nullptr;
  Eigen::VectorXd x_;
  double sigma_ = 0.0;
  Eigen::VectorXd weights_;  // (K_ff + sigma^2 I)^{-1} y
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_marginal_ = 0.0;
};

// Collapsed evidence lower bound for the given blocks:
// log N(y; 0, Q + sigma^2 I) - (1 / 2 sigma^2) trace(K_ff - Q) with
// Q = K_fu K_uu^{-1} K_uf, evaluated through the B factorization (no n x n
// solve). Equals the exact log marginal when span(u) = span(f).
double elbo(const SpectralKernel& kernel, const Dataset& data,
            const InducingBlocks& blocks);

}  // namespace svgp
