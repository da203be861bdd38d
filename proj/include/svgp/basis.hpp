#pragma once

#include <Eigen/Dense>

namespace svgp {

// Trigonometric basis on [-pi, pi], orthonormal in L2 of the uniform
// probability measure:
//   phi_1(x) = 1,
//   phi_{2l}(x) = sqrt(2) cos(l x),
//   phi_{2l+1}(x) = sqrt(2) sin(l x),  l = 1, 2, ...
// sup_j ||phi_j||_inf = sqrt(2).
namespace basis {

inline constexpr double kDomainLo = -3.14159265358979323846;
inline constexpr double kDomainHi = 3.14159265358979323846;
inline constexpr double kSupNorm = 1.41421356237309504880;  // sqrt(2)

// phi_j(x); j >= 1 (j = 0 raises ConfigError).
double eval(long j, double x);

// Fills out[0..count) with phi_1(x) .. phi_count(x) using the angle-addition
// recurrence (one sin/cos pair total, O(count) flops).
void eval_prefix(double x, long count, double* out);

// n x count matrix with rows (phi_1(x_i), ..., phi_count(x_i)).
Eigen::MatrixXd matrix(const Eigen::VectorXd& x, long count);

}  // namespace basis
}  // namespace svgp
