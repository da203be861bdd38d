#include "svgp/krr.hpp"

#include "svgp/errors.hpp"

namespace svgp {

double krr_objective(const Dataset& data, const InducingBlocks& blocks,
                     const Eigen::VectorXd& a) {
  if (a.size() != blocks.m)
    throw ConfigError("krr coefficient vector has length " + std::to_string(a.size()) +
                      ", expected m = " + std::to_string(blocks.m));
  const double sigma2 = data.sigma * data.sigma;
  const Eigen::VectorXd resid = data.y - blocks.K_fu * a;
  return resid.squaredNorm() + sigma2 * a.dot(blocks.K_uu * a);
}

double stationarity_residual(const Dataset& data, const InducingBlocks& blocks,
                             const Eigen::VectorXd& a) {
  if (a.size() != blocks.m)
    throw ConfigError("krr coefficient vector has length " + std::to_string(a.size()) +
                      ", expected m = " + std::to_string(blocks.m));
  const double sigma2 = data.sigma * data.sigma;
  const Eigen::VectorXd Kuf_y = blocks.K_fu.transpose() * data.y;
  const Eigen::VectorXd score =
      -Kuf_y + sigma2 * (blocks.K_uu * a) + blocks.K_fu.transpose() * (blocks.K_fu * a);
  return score.norm() / (1.0 + Kuf_y.norm());
}

}  // namespace svgp
