#include "svgp/kernel.hpp"

#include <cmath>
#include <string>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"

namespace svgp {

namespace {

long select_terms(const Spectrum& spectrum, const Truncation& trunc, double trace) {
  if (!(trunc.tail_tol > 0.0) || !(trunc.tail_tol < 1.0))
    throw ConfigError("truncation.tail_tol: must be in (0, 1), got " +
                      std::to_string(trunc.tail_tol));
  if (trunc.max_terms < 1)
    throw ConfigError("truncation.max_terms: must be >= 1, got " +
                      std::to_string(trunc.max_terms));
  const double target = trunc.tail_tol * trace;
  if (spectrum.tail(trunc.max_terms) >= target) return trunc.max_terms;
  // Smallest J with tail(J) < target; tail is decreasing in J.
  long lo = 1, hi = trunc.max_terms;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (spectrum.tail(mid) < target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

constexpr long kChunk = 512;

}  // namespace

SpectralKernel::SpectralKernel(const Spectrum& spectrum, const Truncation& trunc)
    : spectrum_(spectrum), trace_(spectrum.trace()) {
  terms_ = select_terms(spectrum, trunc, trace_);
  tail_mass_ = spectrum_.tail(terms_);
  lambda_.resize(terms_);
  for (long j = 1; j <= terms_; ++j) lambda_[j - 1] = spectrum_.eigenvalue(j);
  sqrt_lambda_ = lambda_.cwiseSqrt();
}

double SpectralKernel::eval(double x, double y) const {
  Eigen::VectorXd px(terms_), py(terms_);
  basis::eval_prefix(x, terms_, px.data());
  if (x == y) return lambda_.dot(px.cwiseProduct(px));
  basis::eval_prefix(y, terms_, py.data());
  return lambda_.dot(px.cwiseProduct(py));
}

Eigen::MatrixXd SpectralKernel::gram(const Eigen::VectorXd& pts) const {
  const Eigen::Index n = pts.size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (long j0 = 0; j0 < terms_; j0 += kChunk) {
    const long width = std::min(kChunk, terms_ - j0);
    Eigen::MatrixXd block(n, width);
    Eigen::VectorXd row(j0 + width);
    for (Eigen::Index i = 0; i < n; ++i) {
      basis::eval_prefix(pts[i], j0 + width, row.data());
      block.row(i) = row.tail(width).transpose().cwiseProduct(
          sqrt_lambda_.segment(j0, width).transpose());
    }
    K.selfadjointView<Eigen::Lower>().rankUpdate(block);
  }
  return K.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd SpectralKernel::cross(const Eigen::VectorXd& a,
                                      const Eigen::VectorXd& b) const {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(a.size(), b.size());
  for (long j0 = 0; j0 < terms_; j0 += kChunk) {
    const long width = std::min(kChunk, terms_ - j0);
    Eigen::MatrixXd ba(a.size(), width), bb(b.size(), width);
    Eigen::VectorXd row(j0 + width);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      basis::eval_prefix(a[i], j0 + width, row.data());
      ba.row(i) = row.tail(width).transpose().cwiseProduct(
          sqrt_lambda_.segment(j0, width).transpose());
    }
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      basis::eval_prefix(b[i], j0 + width, row.data());
      bb.row(i) = row.tail(width).transpose().cwiseProduct(
          sqrt_lambda_.segment(j0, width).transpose());
    }
    K.noalias() += ba * bb.transpose();
  }
  return K;
}

Eigen::MatrixXd SpectralKernel::feature_matrix(const Eigen::VectorXd& x, long m) const {
  if (m < 1) throw ConfigError("feature count must be >= 1, got " + std::to_string(m));
  return basis::matrix(x, m);
}

}  // namespace svgp
