#include <doctest.h>

#include <cmath>
#include <sstream>

#include "svgp/basis.hpp"
#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/truth.hpp"

using namespace svgp;

TEST_SUITE("truth_dataset") {
  TEST_CASE("sparse-thirds coefficients are supported on multiples of three") {
    const TrueFunction f = TrueFunction::sparse_thirds(0.5);
    CHECK(f.coefficient(1) == 0.0);
    CHECK(f.coefficient(2) == 0.0);
    CHECK(f.coefficient(4) == 0.0);
    // j^{-1/2-beta}/log j at j = 3: 3^{-1}/log 3
    CHECK(f.coefficient(3) == doctest::Approx(0.30341307554227355).epsilon(1e-14));
    CHECK(f.coefficient(6) == doctest::Approx(1.0 / (6.0 * std::log(6.0))).epsilon(1e-14));
    CHECK(f.coefficient(9999) == doctest::Approx(std::pow(9999.0, -1.0) /
                                                 std::log(9999.0)).epsilon(1e-13));
    CHECK(f.coefficient(10002) == 0.0);  // beyond the truncation
    CHECK(f.declared_beta() == 0.5);
    CHECK(f.truncation() == 10000);
    CHECK(f.kind() == TruthKind::kSparseThirds);
  }

  TEST_CASE("heavy-tail coefficients and admissible band") {
    // p/r = 1 so c_j = j^{-1}; requires 2 r beta / d < p < 2 beta / (d + 2 beta)
    const TrueFunction f = TrueFunction::heavy_tail(0.3, 0.3, 0.4, 1, 10000);
    CHECK(f.coefficient(4) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(f.coefficient(9) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK_THROWS_AS(TrueFunction::heavy_tail(0.2, 0.3, 0.4, 1, 10000), ConfigError);
    CHECK_THROWS_AS(TrueFunction::heavy_tail(0.5, 0.3, 0.4, 1, 10000), ConfigError);
    CHECK_THROWS_WITH_AS(TrueFunction::heavy_tail(0.2, 0.3, 0.4, 1, 10000),
                         doctest::Contains("2 r beta / d"), ConfigError);
  }

  TEST_CASE("smooth-power coefficients and admissible band") {
    // c_j = j^{-1/2-q}; requires beta/d < q < alpha/d
    const TrueFunction f = TrueFunction::smooth_power(1.0, 1.5, 0.5, 1, 10000);
    CHECK(f.coefficient(2) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
    CHECK(f.coefficient(5) == doctest::Approx(std::pow(5.0, -1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(TrueFunction::smooth_power(0.4, 1.5, 0.5, 1, 10000), ConfigError);
    CHECK_THROWS_AS(TrueFunction::smooth_power(1.6, 1.5, 0.5, 1, 10000), ConfigError);
  }

  TEST_CASE("zero truth is identically zero") {
    const TrueFunction f = TrueFunction::zero();
    CHECK(f.coefficient(3) == 0.0);
    CHECK(f.eval(0.7) == 0.0);
    CHECK(f.l2_norm_squared() == 0.0);
    CHECK(f.tail_squared_beyond(0) == 0.0);
  }

  TEST_CASE("norm identity: quadrature of f^2 equals the coefficient sum") {
    // A function with top frequency L has a finite trigonometric square, so a
    // periodic rectangle rule with N > 2 j_max nodes integrates it exactly.
    const TrueFunction f = TrueFunction::sparse_thirds(0.5, 301);
    const long N = 1024;
    double acc = 0.0;
    for (long k = 0; k < N; ++k) {
      const double x = -M_PI + 2.0 * M_PI * (double(k) / N);
      const double v = f.eval(x);
      acc += v * v;
    }
    acc /= double(N);
    // the stored coefficients carry exactly the norm minus the analytic
    // remainder of the ideal (infinite) sequence beyond the truncation
    const double stored = f.l2_norm_squared() - f.tail_squared_beyond(f.truncation());
    CHECK(acc == doctest::Approx(stored).epsilon(1e-12));
    CHECK(acc == doctest::Approx(f.l2_norm_squared()).epsilon(1e-2));
  }

  TEST_CASE("vector eval matches scalar eval and the basis expansion") {
    const TrueFunction f = TrueFunction::smooth_power(1.0, 1.5, 0.5, 1, 200);
    Eigen::VectorXd x(5);
    x << -3.0, -1.2, 0.0, 0.4, 2.9;
    const Eigen::VectorXd v = f.eval(x);
    for (long i = 0; i < x.size(); ++i) {
      double direct = 0.0;
      for (long j = 1; j <= f.truncation(); ++j)
        direct += f.coefficient(j) * basis::eval(j, x[i]);
      CHECK(v[i] == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
      CHECK(v[i] == doctest::Approx(f.eval(x[i])).epsilon(1e-15).scale(1.0));
    }
  }

  TEST_CASE("tail of the squared coefficients matches brute force") {
    const TrueFunction f = TrueFunction::sparse_thirds(0.5);
    // differences of tails cancel the shared analytic remainder exactly
    for (long m : {0L, 10L, 100L}) {
      double brute = 0.0;
      for (long j = m + 1; j <= 5000; ++j) {
        const double c = f.coefficient(j);
        brute += c * c;
      }
      CHECK(f.tail_squared_beyond(m) - f.tail_squared_beyond(5000) ==
            doctest::Approx(brute).epsilon(1e-12));
    }
    // beyond the stored coefficients only the (small) ideal-sequence
    // remainder is left
    const double rest = f.tail_squared_beyond(f.truncation());
    CHECK(rest > 0.0);
    CHECK(rest < 1e-5);
    CHECK(f.l2_norm_squared() == doctest::Approx(f.tail_squared_beyond(0)).epsilon(1e-12));
  }

  TEST_CASE("sobolev norms: finite below the smoothness, divergent above") {
    const TrueFunction f = TrueFunction::sparse_thirds(0.5);
    const SobolevNorm at_beta = f.sobolev_norm(0.5, 1);
    CHECK_FALSE(at_beta.divergent);
    // brute force: sum over thirds of j^{2 beta_q} c_j^2
    double brute = 0.0;
    for (long j = 1; j <= f.truncation(); ++j) {
      const double c = f.coefficient(j);
      brute += std::pow(double(j), 1.0) * c * c;
    }
    CHECK(at_beta.value == doctest::Approx(std::sqrt(brute)).epsilon(1e-8));
    CHECK(f.sobolev_norm(0.3, 1).divergent == false);
    CHECK(f.sobolev_norm(0.75, 1).divergent == true);
    CHECK(f.sobolev_norm(1.0, 1).divergent == true);

    const TrueFunction h = TrueFunction::heavy_tail(0.3, 0.3, 0.4, 1, 10000);
    CHECK(h.sobolev_norm(0.49, 1).divergent == false);
    CHECK(h.sobolev_norm(0.5, 1).divergent == true);  // p d / (2r) = 0.5

    const TrueFunction s = TrueFunction::smooth_power(1.0, 1.5, 0.5, 1, 10000);
    CHECK(s.sobolev_norm(0.9, 1).divergent == false);
    CHECK(s.sobolev_norm(1.0, 1).divergent == true);  // q d = 1
  }

  TEST_CASE("datasets are deterministic and nested across n") {
    const TrueFunction f = TrueFunction::sparse_thirds(0.5, 100);
    const Dataset a = sample_dataset(f, 50, 0.1, 42);
    const Dataset b = sample_dataset(f, 50, 0.1, 42);
    CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
    const Dataset big = sample_dataset(f, 120, 0.1, 42);
    for (long i = 0; i < 50; ++i) {
      CHECK(a.x[i] == big.x[i]);
      CHECK(a.y[i] == big.y[i]);
    }
    const Dataset other = sample_dataset(f, 50, 0.1, 43);
    CHECK(a.x[0] != other.x[0]);
  }

  TEST_CASE("noise-free datasets sit exactly on the truth") {
    const TrueFunction f = TrueFunction::smooth_power(1.0, 1.5, 0.5, 1, 150);
    const Dataset d = sample_dataset(f, 30, 0.0, 7);
    for (long i = 0; i < d.n(); ++i) {
      CHECK(d.x[i] >= -M_PI);
      CHECK(d.x[i] <= M_PI);
      CHECK(d.y[i] == doctest::Approx(f.eval(d.x[i])).epsilon(1e-15).scale(1.0));
    }
  }

  TEST_CASE("residual moments match the noise level") {
    const TrueFunction f = TrueFunction::sparse_thirds(0.5, 100);
    const double sigma = 0.3;
    const Dataset d = sample_dataset(f, 20000, sigma, 11);
    double sum = 0.0, sumsq = 0.0, xsum = 0.0;
    for (long i = 0; i < d.n(); ++i) {
      const double r = d.y[i] - f.eval(d.x[i]);
      sum += r;
      sumsq += r * r;
      xsum += d.x[i];
    }
    const double mean = sum / d.n();
    CHECK(std::abs(mean) < 4.0 * sigma / std::sqrt(double(d.n())));
    CHECK(sumsq / d.n() - mean * mean ==
          doctest::Approx(sigma * sigma).epsilon(0.05));
    // design is uniform on [-pi, pi]
    CHECK(std::abs(xsum / d.n()) < 4.0 * M_PI / std::sqrt(3.0 * d.n()));
  }

  TEST_CASE("dataset preconditions") {
    const TrueFunction f = TrueFunction::zero();
    CHECK_THROWS_AS(sample_dataset(f, 0, 0.1, 1), ConfigError);
    CHECK_THROWS_AS(sample_dataset(f, 10, -0.5, 1), ConfigError);
  }

  TEST_CASE("csv export writes exact decimal bytes") {
    Dataset d;
    d.x.resize(2);
    d.y.resize(2);
    d.x << 0.5, -0.25;
    d.y << 1.0, 0.1;
    d.sigma = 0.1;
    d.seed = 0;
    std::ostringstream buf;
    write_dataset_csv(d, buf);
    CHECK(buf.str() == "x,y\n0.5,1\n-0.25,0.10000000000000001\n");
  }
}
