#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "svgp/basis.hpp"
#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/inducing.hpp"
#include "svgp/kernel.hpp"
#include "svgp/linalg.hpp"
#include "svgp/rng.hpp"
#include "svgp/truth.hpp"

using namespace svgp;

namespace {

SpectralKernel test_kernel(double tau = 1.0) {
  Truncation trunc;
  trunc.tail_tol = 1e-8;
  return SpectralKernel(Spectrum::exponential(tau, 1, 1.0), trunc);
}

Dataset test_data(long n, std::uint64_t seed) {
  return sample_dataset(TrueFunction::zero(), n, 0.1, seed);
}

}  // namespace

TEST_SUITE("inducing") {
  TEST_CASE("strategy names round-trip") {
    for (InducingKind kind :
         {InducingKind::kPopulationSpectral, InducingKind::kSampleSpectral,
          InducingKind::kEquidistantPoints, InducingKind::kMdpp})
      CHECK(inducing_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(inducing_kind_from_string("nope"), ConfigError);
  }

  TEST_CASE("equidistant points sit at midpoints of equal arcs") {
    const Eigen::VectorXd z1 = equidistant_points(1);
    CHECK(z1.size() == 1);
    CHECK(z1[0] == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
    const Eigen::VectorXd z2 = equidistant_points(2);
    CHECK(z2[0] == doctest::Approx(-M_PI / 2.0).epsilon(1e-15));
    CHECK(z2[1] == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    const Eigen::VectorXd z4 = equidistant_points(4);
    for (long j = 0; j < 4; ++j)
      CHECK(z4[j] == doctest::Approx(-M_PI + (j + 0.5) * M_PI / 2.0).epsilon(1e-14));
  }

  TEST_CASE("population blocks carry the spectral structure") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(12, 3);
    const InducingBlocks b = population_spectral_blocks(k, d, 5);
    CHECK(b.m == 5);
    for (long i = 0; i < 5; ++i)
      for (long j = 0; j < 5; ++j)
        CHECK(b.K_uu(i, j) ==
              doctest::Approx(i == j ? k.eigenvalues()[i] : 0.0).epsilon(1e-15).scale(1.0));
    for (long i = 0; i < d.n(); ++i)
      for (long j = 1; j <= 5; ++j)
        CHECK(b.K_fu(i, j - 1) ==
              doctest::Approx(k.eigenvalues()[j - 1] * basis::eval(j, d.x[i]))
                  .epsilon(1e-13)
                  .scale(1.0));
    CHECK_THROWS_AS(population_spectral_blocks(k, d, k.terms() + 1), ConfigError);
  }

  TEST_CASE("prior draws reproduce every strategy's covariance blocks") {
    // Monte Carlo oracle: sample f from the truncated prior, build u per the
    // strategy definition, and compare sample covariances against the blocks.
    const SpectralKernel k = test_kernel();
    const long J = k.terms();
    const long n = 3;
    const Dataset d = test_data(n, 5);
    Eigen::VectorXd t(3);
    t << -2.0, 0.3, 2.4;  // extra prediction points for cross()

    const long S = 100000;
    Rng rng(99);
    const Eigen::MatrixXd phi_design = k.feature_matrix(d.x, J);
    const Eigen::MatrixXd phi_test = k.feature_matrix(t, J);
    const Eigen::VectorXd root = k.eigenvalues().cwiseSqrt();

    for (InducingKind kind :
         {InducingKind::kPopulationSpectral, InducingKind::kSampleSpectral,
          InducingKind::kEquidistantPoints, InducingKind::kMdpp}) {
      const long m = 2;
      const InducingBlocks b = make_blocks(k, d, kind, m, 777);
      const Eigen::MatrixXd cross_test = b.cross(k, t);

      Eigen::MatrixXd mean_fu = Eigen::MatrixXd::Zero(n, m);
      Eigen::MatrixXd mean_tu = Eigen::MatrixXd::Zero(t.size(), m);
      Eigen::MatrixXd mean_uu = Eigen::MatrixXd::Zero(m, m);
      Eigen::MatrixXd sq_fu = Eigen::MatrixXd::Zero(n, m);
      Eigen::MatrixXd sq_tu = Eigen::MatrixXd::Zero(t.size(), m);
      Eigen::MatrixXd sq_uu = Eigen::MatrixXd::Zero(m, m);
      Eigen::VectorXd xi(J);
      for (long s = 0; s < S; ++s) {
        for (long j = 0; j < J; ++j) xi[j] = rng.normal() * root[j];
        const Eigen::VectorXd f_design = phi_design * xi;
        const Eigen::VectorXd f_test = phi_test * xi;
        Eigen::VectorXd u(m);
        switch (kind) {
          case InducingKind::kPopulationSpectral:
            u = xi.head(m);
            break;
          case InducingKind::kSampleSpectral:
            u = b.V.transpose() * f_design;
            break;
          default: {  // point strategies: u = f(z)
            Eigen::MatrixXd phi_z = k.feature_matrix(b.z, J);
            u = phi_z * xi;
            break;
          }
        }
        mean_fu += f_design * u.transpose();
        mean_tu += f_test * u.transpose();
        mean_uu += u * u.transpose();
        sq_fu += (f_design * u.transpose()).cwiseAbs2();
        sq_tu += (f_test * u.transpose()).cwiseAbs2();
        sq_uu += (u * u.transpose()).cwiseAbs2();
      }
      mean_fu /= double(S);
      mean_tu /= double(S);
      mean_uu /= double(S);
      auto check_close = [&](const Eigen::MatrixXd& mc, const Eigen::MatrixXd& sq,
                             const Eigen::MatrixXd& expected) {
        for (long i = 0; i < mc.rows(); ++i)
          for (long j = 0; j < mc.cols(); ++j) {
            const double var = sq(i, j) / S - mc(i, j) * mc(i, j);
            const double se = std::sqrt(std::max(var, 1e-30) / S);
            INFO("strategy ", to_string(kind), " entry ", i, ",", j);
            CHECK(std::abs(mc(i, j) - expected(i, j)) < 3.5 * se + 1e-12);
          }
      };
      check_close(mean_fu, sq_fu, b.K_fu);
      check_close(mean_tu, sq_tu, cross_test);
      check_close(mean_uu, sq_uu, b.K_uu);
    }
  }

  TEST_CASE("sample spectral blocks expose orthonormal eigenvectors") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(30, 7);
    const InducingBlocks b = sample_spectral_blocks(k, d, 6);
    const Eigen::MatrixXd VtV = b.V.transpose() * b.V;
    CHECK((VtV - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
    // K_fu column j = mu_j v_j and K_uu = diag(mu)
    for (long j = 0; j < 6; ++j) {
      CHECK((b.K_fu.col(j) - b.K_uu(j, j) * b.V.col(j)).cwiseAbs().maxCoeff() < 1e-9);
      for (long i = 0; i < 6; ++i)
        if (i != j) CHECK(b.K_uu(i, j) == 0.0);
    }
    // eigen equation on the kernel matrix itself
    const Eigen::MatrixXd G = k.gram(d.x);
    for (long j = 0; j < 6; ++j)
      CHECK((G * b.V.col(j) - b.K_uu(j, j) * b.V.col(j)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK_THROWS_AS(sample_spectral_blocks(k, d, 31), ConfigError);
  }

  TEST_CASE("factor and dense eigendecomposition routes agree") {
    const SpectralKernel k = test_kernel(0.5);  // J < n triggers the factor route
    const Dataset d = test_data(60, 11);
    REQUIRE(k.terms() < d.n());
    const EigenPairs fast = kernel_matrix_eigen(k, d.x);
    const Eigen::MatrixXd G = k.gram(d.x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(G);
    const Eigen::VectorXd dense_desc = dense.eigenvalues().reverse();
    REQUIRE(fast.values.size() <= dense_desc.size());
    for (long j = 0; j < fast.values.size(); ++j)
      CHECK(fast.values[j] ==
            doctest::Approx(dense_desc[j]).epsilon(1e-9).scale(dense_desc[0]));
    const Eigen::MatrixXd recon =
        fast.vectors * fast.values.asDiagonal() * fast.vectors.transpose();
    CHECK((recon - G).cwiseAbs().maxCoeff() < 1e-9 * dense_desc[0]);
    const Eigen::MatrixXd VtV = fast.vectors.transpose() * fast.vectors;
    CHECK((VtV - Eigen::MatrixXd::Identity(VtV.rows(), VtV.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }

  TEST_CASE("rank-deficient kernel matrices are rejected") {
    Truncation trunc;
    trunc.max_terms = 4;
    trunc.tail_tol = 1e-15;  // unreachable, so the cap binds
    const SpectralKernel k(Spectrum::exponential(1.0, 1, 1.0), trunc);
    REQUIRE(k.terms() == 4);
    const Dataset d = test_data(10, 13);
    CHECK_THROWS_AS(sample_spectral_blocks(k, d, 6), NumericError);
    CHECK_THROWS_AS(mdpp_blocks(k, d, 6, 1), ConfigError);
  }

  TEST_CASE("point blocks reject duplicate inducing inputs") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(8, 17);
    Eigen::VectorXd z(3);
    z << -1.0, 0.5, 0.5 + 1e-13;
    CHECK_THROWS_WITH_AS(point_blocks(k, d, z), doctest::Contains("duplicate"),
                         ConfigError);
  }

  TEST_CASE("point blocks evaluate the kernel at (x, z)") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(9, 19);
    const Eigen::VectorXd z = equidistant_points(4);
    const InducingBlocks b = point_blocks(k, d, z);
    for (long i = 0; i < d.n(); ++i)
      for (long j = 0; j < 4; ++j)
        CHECK(b.K_fu(i, j) ==
              doctest::Approx(k.eval(d.x[i], z[j])).epsilon(1e-12).scale(1.0));
    for (long i = 0; i < 4; ++i)
      for (long j = 0; j < 4; ++j)
        CHECK(b.K_uu(i, j) ==
              doctest::Approx(k.eval(z[i], z[j])).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("size-m determinantal sampler: diag(1,3) marginal is 3/4") {
    Eigen::MatrixXd L(2, 2);
    L << 1.0, 0.0, 0.0, 3.0;
    const long S = 100000;
    long hits = 0;
    for (long s = 0; s < S; ++s) {
      const std::vector<long> idx = mdpp_sample(L, 1, 1000 + s);
      REQUIRE(idx.size() == 1);
      if (idx[0] == 1) ++hits;
    }
    CHECK(std::abs(double(hits) / S - 0.75) < 0.01);
  }

  TEST_CASE("size-m determinantal sampler: identity kernel is uniform") {
    const Eigen::MatrixXd L = Eigen::MatrixXd::Identity(5, 5);
    const long S = 100000;
    std::map<std::pair<long, long>, long> counts;
    for (long s = 0; s < S; ++s) {
      const std::vector<long> idx = mdpp_sample(L, 2, 5000 + s);
      REQUIRE(idx.size() == 2);
      REQUIRE(idx[0] < idx[1]);
      ++counts[{idx[0], idx[1]}];
    }
    CHECK(counts.size() == 10);
    double chi2 = 0.0;
    const double expected = S / 10.0;
    for (const auto& [key, c] : counts)
      chi2 += (c - expected) * (c - expected) / expected;
    // chi-square with 9 degrees of freedom: p > 0.001 iff stat < 27.877
    CHECK(chi2 < 27.877);
  }

  TEST_CASE("determinantal sampler edge cases and determinism") {
    const Eigen::MatrixXd L = Eigen::MatrixXd::Identity(4, 4) * 2.0;
    const std::vector<long> all = mdpp_sample(L, 4, 3);
    CHECK(all == std::vector<long>{0, 1, 2, 3});
    const std::vector<long> a = mdpp_sample(L, 2, 42);
    const std::vector<long> b = mdpp_sample(L, 2, 42);
    CHECK(a == b);
  }

  TEST_CASE("mdpp blocks select design points and stay deterministic") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(25, 23);
    const InducingBlocks b = mdpp_blocks(k, d, 5, 31);
    CHECK(b.indices.size() == 5);
    CHECK(std::is_sorted(b.indices.begin(), b.indices.end()));
    for (long j = 0; j < 5; ++j)
      CHECK(b.z[j] == d.x[b.indices[static_cast<size_t>(j)]]);
    const InducingBlocks b2 = mdpp_blocks(k, d, 5, 31);
    CHECK(b.indices == b2.indices);
    const InducingBlocks b3 = mdpp_blocks(k, d, 5, 32);
    CHECK(b.indices != b3.indices);  // overwhelmingly likely for n=25
  }

  TEST_CASE("make_blocks dispatches to every strategy") {
    const SpectralKernel k = test_kernel();
    const Dataset d = test_data(20, 29);
    for (InducingKind kind :
         {InducingKind::kPopulationSpectral, InducingKind::kSampleSpectral,
          InducingKind::kEquidistantPoints, InducingKind::kMdpp}) {
      const InducingBlocks b = make_blocks(k, d, kind, 4, 57);
      CHECK(b.kind == kind);
      CHECK(b.m == 4);
      CHECK(b.K_uu.rows() == 4);
      CHECK(b.K_fu.rows() == d.n());
      CHECK(b.K_fu.cols() == 4);
    }
  }
}
