#include "svgp/basis.hpp"

#include <cmath>

#include "svgp/errors.hpp"

namespace svgp {
namespace basis {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
}

double eval(long j, double x) {
  if (j < 1) throw ConfigError("basis index must be >= 1, got " + std::to_string(j));
  if (j == 1) return 1.0;
  const long l = j / 2;
  return (j % 2 == 0) ? kSqrt2 * std::cos(l * x) : kSqrt2 * std::sin(l * x);
}

void eval_prefix(double x, long count, double* out) {
  if (count < 1) throw ConfigError("basis prefix length must be >= 1, got " + std::to_string(count));
  out[0] = 1.0;
  if (count == 1) return;
  const double c1 = std::cos(x);
  const double s1 = std::sin(x);
  double cl = c1;  // cos(l x), sin(l x), starting at l = 1
  double sl = s1;
  for (long j = 2; j <= count; ++j) {
    out[j - 1] = (j % 2 == 0) ? kSqrt2 * cl : kSqrt2 * sl;
    if (j % 2 == 1) {  // finished frequency l = j/2, advance the rotation
      const double cn = cl * c1 - sl * s1;
      const double sn = sl * c1 + cl * s1;
      cl = cn;
      sl = sn;
    }
  }
}

Eigen::MatrixXd matrix(const Eigen::VectorXd& x, long count) {
  Eigen::MatrixXd out(x.size(), count);
  Eigen::VectorXd row(count);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    eval_prefix(x[i], count, row.data());
    out.row(i) = row.transpose();
  }
  return out;
}

}  // namespace basis
}  // namespace svgp
