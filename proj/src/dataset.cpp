#include "svgp/dataset.hpp"

#include <cstdio>
#include <ostream>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/rng.hpp"

namespace svgp {

namespace {
constexpr std::uint64_t kDatasetStream = 1;
}

Dataset sample_dataset(const TrueFunction& truth, long n, double sigma,
                       std::uint64_t seed) {
  if (n < 1) throw ConfigError("dataset n: must be >= 1, got " + std::to_string(n));
  if (sigma < 0.0) throw ConfigError("dataset sigma: must be >= 0");
  Dataset data;
  data.sigma = sigma;
  data.seed = seed;
  data.x.resize(n);
  Eigen::VectorXd eps(n);
  Rng rng(derive_stream(seed, kDatasetStream));
  for (long i = 0; i < n; ++i) {
    data.x[i] = rng.uniform(basis::kDomainLo, basis::kDomainHi);
    eps[i] = rng.normal();
  }
  data.y = truth.eval(data.x) + sigma * eps;
  return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
  os << "x,y\n";
  char buf[80];
  for (long i = 0; i < data.n(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", data.x[i], data.y[i]);
    os << buf;
  }
}

}  // namespace svgp
