#pragma once

#include <Eigen/Dense>

#include "svgp/kernel.hpp"

namespace svgp {

// Cholesky with an escalating ridge: tries the matrix as-is, then adds
// 1e-10 * trace/dim escalating tenfold up to 1e-6 * trace/dim, then raises
// NumericError carrying condition diagnostics. `label` names the matrix in
// error messages.
struct JitteredLlt {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double ridge = 0.0;
};
JitteredLlt jittered_llt(const Eigen::MatrixXd& M, const char* label);

// Eigendecomposition of the kernel matrix K_ff at the design points,
// eigenvalues in descending order, clamped at zero. When the series length J
// is below n the decomposition runs exactly on the J x J Gram of the factor
// Phi sqrt(Lambda) (same nonzero eigenpairs, cost O(n J^2) instead of O(n^3));
// otherwise on the dense n x n matrix. Eigenvectors for (near-)zero
// eigenvalues are left as zero columns.
struct EigenPairs {
  Eigen::VectorXd values;   // descending, size min(n, J)
  Eigen::MatrixXd vectors;  // n x size, orthonormal columns where values > 0
};
EigenPairs kernel_matrix_eigen(const SpectralKernel& kernel, const Eigen::VectorXd& x);

// Stratified-uniform quadrature nodes on [-pi, pi]: one uniform draw per
// equal-width cell, sorted by construction. Unbiased for integrals against
// the uniform measure with per-cell variance suppression.
Eigen::VectorXd stratified_nodes(long count, std::uint64_t seed);

}  // namespace svgp
