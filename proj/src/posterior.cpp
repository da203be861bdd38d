#include "svgp/posterior.hpp"

#include <cmath>
#include <string>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/linalg.hpp"
#include "svgp/rng.hpp"

namespace svgp {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr std::uint64_t kSampleStream = 5;

Eigen::VectorXd kernel_diag(const SpectralKernel& kernel, const Eigen::VectorXd& pts) {
  Eigen::VectorXd out(pts.size());
  Eigen::VectorXd phi(kernel.terms());
  for (Eigen::Index i = 0; i < pts.size(); ++i) {
    basis::eval_prefix(pts[i], kernel.terms(), phi.data());
    out[i] = kernel.eigenvalues().dot(phi.cwiseAbs2());
  }
  return out;
}

}  // namespace

VariationalPosterior VariationalPosterior::fit(const SpectralKernel& kernel,
                                               const Dataset& data,
                                               InducingBlocks blocks) {
  if (!(data.sigma > 0.0))
    throw ConfigError("sigma: fitting requires sigma > 0, got " +
                      std::to_string(data.sigma));
  if (blocks.K_fu.rows() != data.n())
    throw ConfigError("inducing blocks: K_fu row count " +
                      std::to_string(blocks.K_fu.rows()) +
                      " does not match n = " + std::to_string(data.n()));
  VariationalPosterior post;
  post.kernel_ = &kernel;
  post.sigma_ = data.sigma;
  post.n_ = data.n();

  const double sigma2 = data.sigma * data.sigma;
  Eigen::MatrixXd B = sigma2 * blocks.K_uu;
  B.selfadjointView<Eigen::Lower>().rankUpdate(blocks.K_fu.transpose());
  B = B.selfadjointView<Eigen::Lower>();
  post.B_llt_ = jittered_llt(B, "B = sigma^2 K_uu + K_uf K_fu").llt;
  post.Kuu_llt_ = jittered_llt(blocks.K_uu, "K_uu").llt;
  post.weights_ = post.B_llt_.solve(blocks.K_fu.transpose() * data.y);
  if (!post.weights_.allFinite())
    throw NumericError("variational fit produced non-finite weights");

  if (blocks.kind == InducingKind::kPopulationSpectral) {
    // A = (Lambda^{-1} + sigma^{-2} Phi'Phi)^{-1}; head mean = A Phi'y / sigma^2.
    const long m = blocks.m;
    Eigen::MatrixXd phi = blocks.K_fu;  // Phi Lambda
    phi.array().rowwise() /= kernel.eigenvalues().head(m).transpose().array();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
    P.selfadjointView<Eigen::Lower>().rankUpdate(phi.transpose(), 1.0 / sigma2);
    P = P.selfadjointView<Eigen::Lower>();
    P.diagonal() += kernel.eigenvalues().head(m).cwiseInverse();
    Eigen::LLT<Eigen::MatrixXd> P_llt = jittered_llt(P, "Lambda^{-1} + Phi'Phi/sigma^2").llt;
    post.A_ = P_llt.solve(Eigen::MatrixXd::Identity(m, m));
    post.head_mean_ = P_llt.solve(phi.transpose() * data.y) / sigma2;
    post.spectral_ = true;
  }
  post.blocks_ = std::move(blocks);
  return post;
}

Eigen::VectorXd VariationalPosterior::mean(const Eigen::VectorXd& pts) const {
  return blocks_.cross(*kernel_, pts) * weights_;
}

Eigen::VectorXd VariationalPosterior::variance(const Eigen::VectorXd& pts) const {
  const Eigen::MatrixXd kxu = blocks_.cross(*kernel_, pts);
  const Eigen::VectorXd prior = kernel_diag(*kernel_, pts);
  const Eigen::MatrixXd uu_solved = Kuu_llt_.solve(kxu.transpose());
  const Eigen::MatrixXd b_solved = B_llt_.solve(kxu.transpose());
  const double sigma2 = sigma_ * sigma_;
  Eigen::VectorXd out(pts.size());
  for (Eigen::Index i = 0; i < pts.size(); ++i) {
    out[i] = prior[i] - kxu.row(i).dot(uu_solved.col(i)) +
             sigma2 * kxu.row(i).dot(b_solved.col(i));
  }
  return out;
}

Eigen::MatrixXd VariationalPosterior::covariance(const Eigen::VectorXd& pts) const {
  const Eigen::MatrixXd kxu = blocks_.cross(*kernel_, pts);
  const double sigma2 = sigma_ * sigma_;
  Eigen::MatrixXd cov = kernel_->gram(pts);
  cov.noalias() -= kxu * Kuu_llt_.solve(kxu.transpose());
  cov.noalias() += sigma2 * (kxu * B_llt_.solve(kxu.transpose()));
  return cov;
}

const Eigen::MatrixXd& VariationalPosterior::head_covariance() const {
  if (!spectral_)
    throw ConfigError("spectral coefficient law requires population_spectral blocks");
  return A_;
}

const Eigen::VectorXd& VariationalPosterior::head_mean() const {
  if (!spectral_)
    throw ConfigError("spectral coefficient law requires population_spectral blocks");
  return head_mean_;
}

Eigen::VectorXd VariationalPosterior::spectral_mean(const Eigen::VectorXd& pts) const {
  return kernel_->feature_matrix(pts, m()) * head_mean();
}

Eigen::VectorXd VariationalPosterior::spectral_variance(const Eigen::VectorXd& pts) const {
  const Eigen::MatrixXd& A = head_covariance();
  const Eigen::MatrixXd phi = kernel_->feature_matrix(pts, m());
  const Eigen::VectorXd prior = kernel_diag(*kernel_, pts);
  Eigen::VectorXd out(pts.size());
  for (Eigen::Index i = 0; i < pts.size(); ++i) {
    const Eigen::VectorXd r = phi.row(i).transpose();
    const double head_prior = kernel_->eigenvalues().head(m()).dot(r.cwiseAbs2());
    out[i] = prior[i] - head_prior + r.dot(A * r);
  }
  return out;
}

double VariationalPosterior::l2_spread() const {
  if (spectral_) return A_.trace() + kernel_->spectrum().tail(m());
  return l2_spread_quadrature(4096, 0x5eadbeef);
}

double VariationalPosterior::l2_spread_quadrature(long quad_points,
                                                  std::uint64_t seed) const {
  const Eigen::VectorXd nodes = stratified_nodes(quad_points, derive_stream(seed, 4));
  return variance(nodes).mean();
}

Eigen::MatrixXd VariationalPosterior::sample_on_grid(const Eigen::VectorXd& grid,
                                                     long count,
                                                     std::uint64_t seed) const {
  if (count < 1) throw ConfigError("sample count must be >= 1");
  const Eigen::VectorXd mu = mean(grid);
  const Eigen::MatrixXd cov = covariance(grid);
  Eigen::LLT<Eigen::MatrixXd> llt = jittered_llt(cov, "posterior covariance on grid").llt;
  Rng rng(derive_stream(seed, kSampleStream));
  const long q = grid.size();
  Eigen::MatrixXd Z(q, count);
  for (long s = 0; s < count; ++s)
    for (long i = 0; i < q; ++i) Z(i, s) = rng.normal();
  Eigen::MatrixXd draws = llt.matrixL() * Z;
  draws.colwise() += mu;
  return draws.transpose();
}

ExactPosterior ExactPosterior::fit(const SpectralKernel& kernel, const Dataset& data) {
  if (!(data.sigma > 0.0))
    throw ConfigError("sigma: fitting requires sigma > 0, got " +
                      std::to_string(data.sigma));
  ExactPosterior post;
  post.kernel_ = &kernel;
  post.x_ = data.x;
  post.sigma_ = data.sigma;
  const double sigma2 = data.sigma * data.sigma;
  Eigen::MatrixXd K = kernel.gram(data.x);
  K.diagonal().array() += sigma2;
  post.llt_ = jittered_llt(K, "K_ff + sigma^2 I").llt;
  post.weights_ = post.llt_.solve(data.y);
  if (!post.weights_.allFinite())
    throw NumericError("exact fit produced non-finite weights");
  double logdet = 0.0;
  for (long i = 0; i < data.n(); ++i)
    logdet += 2.0 * std::log(post.llt_.matrixLLT()(i, i));
  post.log_marginal_ = -0.5 * (data.n() * kLog2Pi + logdet + data.y.dot(post.weights_));
  return post;
}

Eigen::VectorXd ExactPosterior::mean(const Eigen::VectorXd& pts) const {
  return kernel_->cross(pts, x_) * weights_;
}

Eigen::VectorXd ExactPosterior::variance(const Eigen::VectorXd& pts) const {
  const Eigen::MatrixXd kpx = kernel_->cross(pts, x_);
  const Eigen::MatrixXd solved = llt_.solve(kpx.transpose());
  const Eigen::VectorXd prior = kernel_diag(*kernel_, pts);
  Eigen::VectorXd out(pts.size());
  for (Eigen::Index i = 0; i < pts.size(); ++i)
    out[i] = prior[i] - kpx.row(i).dot(solved.col(i));
  return out;
}

Eigen::MatrixXd ExactPosterior::covariance(const Eigen::VectorXd& pts) const {
  const Eigen::MatrixXd kpx = kernel_->cross(pts, x_);
  Eigen::MatrixXd cov = kernel_->gram(pts);
  cov.noalias() -= kpx * llt_.solve(kpx.transpose());
  return cov;
}

double ExactPosterior::log_marginal() const { return log_marginal_; }

double elbo(const SpectralKernel& kernel, const Dataset& data,
            const InducingBlocks& blocks) {
  if (!(data.sigma > 0.0)) throw ConfigError("sigma: elbo requires sigma > 0");
  const double sigma2 = data.sigma * data.sigma;
  const long n = data.n();
  const long m = blocks.m;

  Eigen::MatrixXd B = sigma2 * blocks.K_uu;
  B.selfadjointView<Eigen::Lower>().rankUpdate(blocks.K_fu.transpose());
  B = B.selfadjointView<Eigen::Lower>();
  const Eigen::LLT<Eigen::MatrixXd> B_llt = jittered_llt(B, "B (elbo)").llt;
  const Eigen::LLT<Eigen::MatrixXd> Kuu_llt = jittered_llt(blocks.K_uu, "K_uu (elbo)").llt;

  double logdet_B = 0.0, logdet_Kuu = 0.0;
  for (long i = 0; i < m; ++i) {
    logdet_B += 2.0 * std::log(B_llt.matrixLLT()(i, i));
    logdet_Kuu += 2.0 * std::log(Kuu_llt.matrixLLT()(i, i));
  }
  // log det(Q + sigma^2 I) with Q = K_fu K_uu^{-1} K_uf
  const double logdet = (n - m) * std::log(sigma2) + logdet_B - logdet_Kuu;

  const Eigen::VectorXd Kuf_y = blocks.K_fu.transpose() * data.y;
  const double quad = (data.y.squaredNorm() - Kuf_y.dot(B_llt.solve(Kuf_y))) / sigma2;

  const double trace_Kff = kernel_diag(kernel, data.x).sum();
  const Eigen::MatrixXd half = Kuu_llt.matrixL().solve(blocks.K_fu.transpose());
  const double trace_Q = half.squaredNorm();

  return -0.5 * (n * kLog2Pi + logdet + quad) - (trace_Kff - trace_Q) / (2.0 * sigma2);
}

}  // namespace svgp
