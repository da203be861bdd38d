#include "svgp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/rng.hpp"

namespace svgp {

JitteredLlt jittered_llt(const Eigen::MatrixXd& M, const char* label) {
  const Eigen::Index dim = M.rows();
  const double scale = std::max(M.trace() / static_cast<double>(dim), 1e-300);
  JitteredLlt out;
  out.llt.compute(M);
  if (out.llt.info() == Eigen::Success) return out;
  for (double rel = 1e-10; rel <= 1.000001e-6; rel *= 10.0) {
    const double ridge = rel * scale;
    out.llt.compute(M + ridge * Eigen::MatrixXd::Identity(dim, dim));
    if (out.llt.info() == Eigen::Success) {
      out.ridge = ridge;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "Cholesky of " << label << " failed after jitter ladder (dim=" << dim
      << ", trace=" << M.trace() << ", min diag=" << M.diagonal().minCoeff()
      << ", max diag=" << M.diagonal().maxCoeff()
      << ", max ridge tried=" << 1e-6 * scale << ")";
  throw NumericError(msg.str());
}

namespace {

EigenPairs dense_kernel_eigen(const SpectralKernel& kernel, const Eigen::VectorXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel.gram(x));
  if (solver.info() != Eigen::Success)
    throw NumericError("kernel matrix eigendecomposition failed (dense route, n=" +
                       std::to_string(x.size()) + ")");
  EigenPairs out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace

EigenPairs kernel_matrix_eigen(const SpectralKernel& kernel, const Eigen::VectorXd& x) {
  const long n = x.size();
  const long J = kernel.terms();
  EigenPairs out;
  if (J >= n) {
    out = dense_kernel_eigen(kernel, x);
  } else {
    Eigen::MatrixXd M = kernel.feature_matrix(x, J);
    M.array().rowwise() *= kernel.eigenvalues().transpose().array().sqrt();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(J, J);
    G.selfadjointView<Eigen::Lower>().rankUpdate(M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(G.selfadjointView<Eigen::Lower>()));
    if (solver.info() != Eigen::Success)
      throw NumericError("kernel matrix eigendecomposition failed (factor route, J=" +
                         std::to_string(J) + ")");
    out.values = solver.eigenvalues().reverse();
    out.vectors.setZero(n, J);
    const double cutoff = 1e-14 * std::max(out.values[0], 0.0);
    for (long i = 0; i < J; ++i) {
      if (out.values[i] > cutoff)
        out.vectors.col(i) =
            M * solver.eigenvectors().col(J - 1 - i) / std::sqrt(out.values[i]);
    }
  }
  for (long i = 0; i < out.values.size(); ++i) {
    if (!std::isfinite(out.values[i]))
      throw NumericError("kernel matrix eigendecomposition produced non-finite values");
    if (out.values[i] < 0.0) out.values[i] = 0.0;
  }
  return out;
}

Eigen::VectorXd stratified_nodes(long count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("quadrature node count must be >= 1");
  Rng rng(seed);
  Eigen::VectorXd nodes(count);
  const double width = (basis::kDomainHi - basis::kDomainLo) / count;
  for (long q = 0; q < count; ++q)
    nodes[q] = basis::kDomainLo + (q + rng.uniform()) * width;
  return nodes;
}

}  // namespace svgp
