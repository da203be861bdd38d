#include <doctest.h>

#include <cmath>

#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/inducing.hpp"
#include "svgp/kernel.hpp"
#include "svgp/krr.hpp"
#include "svgp/posterior.hpp"
#include "svgp/rng.hpp"
#include "svgp/truth.hpp"

using namespace svgp;

namespace {

struct Setup {
  SpectralKernel kernel;
  Dataset data;
};

Setup make_setup(double tau, long n, std::uint64_t seed) {
  Truncation trunc;
  trunc.tail_tol = 1e-10;
  return {SpectralKernel(Spectrum::exponential(tau, 1, 1.0), trunc),
          sample_dataset(TrueFunction::sparse_thirds(0.8, 400), n, 0.2, seed)};
}

}  // namespace

TEST_SUITE("krr") {
  TEST_CASE("objective identity holds for arbitrary weights") {
    const Setup s = make_setup(1.0, 25, 31);
    const InducingBlocks b = population_spectral_blocks(s.kernel, s.data, 6);
    Rng rng(32);
    Eigen::VectorXd a(b.m);
    for (long i = 0; i < b.m; ++i) a[i] = rng.normal();
    const Eigen::VectorXd resid = s.data.y - b.K_fu * a;
    const double expected =
        resid.squaredNorm() + s.data.sigma * s.data.sigma * a.dot(b.K_uu * a);
    CHECK(krr_objective(s.data, b, a) == doctest::Approx(expected).epsilon(1e-13));
  }

  TEST_CASE("fitted weights are stationary for every strategy") {
    const Setup s = make_setup(1.0, 60, 33);
    for (InducingKind kind :
         {InducingKind::kPopulationSpectral, InducingKind::kSampleSpectral,
          InducingKind::kEquidistantPoints, InducingKind::kMdpp}) {
      CAPTURE(to_string(kind));
      const InducingBlocks b = make_blocks(s.kernel, s.data, kind, 8, 34);
      const auto post = VariationalPosterior::fit(s.kernel, s.data, b);
      CHECK(stationarity_residual(s.data, b, post.weights()) < 1e-8);
    }
  }

  TEST_CASE("zero weights give the normalized gradient norm at the origin") {
    const Setup s = make_setup(1.0, 30, 35);
    const InducingBlocks b = population_spectral_blocks(s.kernel, s.data, 5);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(b.m);
    const double g = (b.K_fu.transpose() * s.data.y).norm();
    CHECK(stationarity_residual(s.data, b, zero) ==
          doctest::Approx(g / (1.0 + g)).epsilon(1e-13));
  }

  TEST_CASE("perturbing the fitted weights never lowers the objective") {
    const Setup s = make_setup(1.0, 50, 36);
    const InducingBlocks b = make_blocks(s.kernel, s.data, InducingKind::kMdpp, 7, 37);
    const auto post = VariationalPosterior::fit(s.kernel, s.data, b);
    const Eigen::VectorXd a = post.weights();
    const double base = krr_objective(s.data, b, a);
    Rng rng(38);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd delta(b.m);
      for (long i = 0; i < b.m; ++i) delta[i] = rng.normal();
      delta *= 1e-3 / delta.norm();
      CHECK(krr_objective(s.data, b, a + delta) - base >= -1e-10);
    }
    for (long i = 0; i < b.m; ++i) {
      for (double step : {1e-2, -1e-2}) {
        Eigen::VectorXd shifted = a;
        shifted[i] += step;
        CHECK(krr_objective(s.data, b, shifted) - base >= -1e-10);
      }
    }
  }

  TEST_CASE("inducing the full design reduces to plain kernel ridge regression") {
    const Setup s = make_setup(0.1, 30, 39);
    const InducingBlocks b = point_blocks(s.kernel, s.data, s.data.x);
    const auto post = VariationalPosterior::fit(s.kernel, s.data, b);
    const Eigen::MatrixXd K = s.kernel.gram(s.data.x);
    const Eigen::VectorXd ridge =
        (K + s.data.sigma * s.data.sigma *
                 Eigen::MatrixXd::Identity(s.data.n(), s.data.n()))
            .ldlt()
            .solve(s.data.y);
    for (long i = 0; i < s.data.n(); ++i)
      CHECK(post.weights()[i] == doctest::Approx(ridge[i]).epsilon(1e-6).scale(1.0));
  }

  TEST_CASE("residual rejects weight vectors of the wrong size") {
    const Setup s = make_setup(1.0, 20, 40);
    const InducingBlocks b = population_spectral_blocks(s.kernel, s.data, 4);
    const Eigen::VectorXd bad = Eigen::VectorXd::Zero(b.m + 1);
    CHECK_THROWS_AS(stationarity_residual(s.data, b, bad), ConfigError);
    CHECK_THROWS_AS(krr_objective(s.data, b, bad), ConfigError);
  }
}
