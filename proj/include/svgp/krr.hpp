#pragma once

#include <Eigen/Dense>

#include "svgp/dataset.hpp"
#include "svgp/inducing.hpp"

namespace svgp {

// Independent ridge-regression characterization of the variational mean: over
// functions f = sum_j a_j h_j with h_j = cov(f(.), u_j), the variational mean
// minimizes sum_i (y_i - f(x_i))^2 + sigma^2 ||f||_H^2, and ||f||_H^2 = a'K_uu a.
// These functions recompute everything from the raw blocks so they can serve
// as an oracle for the posterior module.

// (y - K_fu a)'(y - K_fu a) + sigma^2 a' K_uu a
double krr_objective(const Dataset& data, const InducingBlocks& blocks,
                     const Eigen::VectorXd& a);

// || -K_uf y + (sigma^2 K_uu + K_uf K_fu) a || / (1 + ||K_uf y||)
double stationarity_residual(const Dataset& data, const InducingBlocks& blocks,
                             const Eigen::VectorXd& a);

}  // namespace svgp
