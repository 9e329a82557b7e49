#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

TEST_CASE("rng streams are reproducible") {
  SeededRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    (void)c;
  }
  SeededRng d(42), e(43);
  CHECK(d.next_u64() != e.next_u64());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
  SeededRng u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.below(10) < 10);
  }
}

TEST_CASE("normals have unit variance") {
  SeededRng r(3);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("sphere and ball samples") {
  SeededRng r(11);
  for (int d : {1, 2, 5, 50}) {
    std::vector<double> x(d);
    for (int i = 0; i < 200; ++i) {
      sample_unit_sphere_into(x, r);
      double n2 = 0;
      for (double v : x) n2 += v * v;
      CHECK(std::abs(n2 - 1.0) < 1e-12);
      sample_ball_into(x, r);
      n2 = 0;
      for (double v : x) n2 += v * v;
      CHECK(n2 <= 1.0 + 1e-12);
    }
  }
  // radius law of the ball: P(|x| <= 1/2) = 2^-d
  std::vector<double> x(3);
  int inside = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    sample_ball_into(x, r);
    inside += (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= 0.25);
  }
  CHECK(std::abs(inside / double(n) - 0.125) < 0.005);
}

TEST_CASE("incomplete beta against frozen values and boost") {
  CHECK(regularized_incomplete_beta(1.5, 1.5, 0.3) == doctest::Approx(0.2523157877343455).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(4.5, 4.5, 0.55) == doctest::Approx(0.6150625000539319).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2, 3, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(3, 3, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(3, 3, 1.0) == 1.0);
  double worst = 0;
  for (double a : {0.5, 1.0, 4.5, 24.5})
    for (int i = 1; i < 50; ++i) {
      const double x = i / 50.0;
      worst = std::max(worst, std::abs(regularized_incomplete_beta(a, a, x) - boost::math::ibeta(a, a, x)));
    }
  CHECK(worst < 1e-13);
  CHECK(beta_inverse_cdf(2.5, 2.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  const double q = beta_inverse_cdf(1.5, 4.0, 0.3);
  CHECK(regularized_incomplete_beta(1.5, 4.0, q) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("ks statistic") {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back((i + 0.5) / 1000.0);
  CHECK(ks_statistic(xs, [](double t) { return t; }) == doctest::Approx(0.0005).epsilon(1e-9));
  CHECK(ks_critical(0.01, 10000) == doctest::Approx(0.016276).epsilon(1e-3));
}

TEST_CASE("dot products follow the beta law") {
  for (int d : {2, 3, 10, 50}) {
    SeededRng r(1000 + d);
    std::vector<double> x(d, 0.0);
    x[0] = 0.6;
    if (d > 1) x[1] = -0.3;
    CHECK(beta_law_check(d, x, 10000, r) < ks_critical(0.01, 10000));
  }
  // a wrong law is rejected: d=10 samples against the d=3 CDF
  SeededRng r(5);
  std::vector<double> w(10), xs;
  for (int i = 0; i < 10000; ++i) {
    sample_unit_sphere_into(w, r);
    xs.push_back(w[0] / 2 + 0.5);
  }
  CHECK(ks_statistic(xs, [](double t) { return regularized_incomplete_beta(1, 1, t); }) >
        ks_critical(0.01, 10000));
}

TEST_CASE("random orthogonal matrix") {
  SeededRng r(9);
  const Eigen::MatrixXd q = random_orthogonal(6, r);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-12);
}
