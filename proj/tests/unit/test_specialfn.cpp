#include <doctest.h>

#include <cmath>

#include "radialnet/specialfn.hpp"

using namespace radialnet;

TEST_CASE("double factorial small values") {
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(1) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(8) == 384);
}

TEST_CASE("alpha coefficients") {
  CHECK(alpha_coeff(5, 0) == 1);
  // second moment of a sphere coordinate is 1/d
  for (int d = 2; d <= 12; ++d) CHECK(alpha_coeff(d, 1) == make_rational(1, 2 * d));
  CHECK(alpha_coeff(3, 2) == make_rational(1, 120));  // sinh(z)/z
  const auto c = FdCoefficients::compute(4, 6);
  for (int k = 1; k <= 6; ++k) CHECK(c.coeffs[k] * (2 * k) * (4 + 2 * k - 2) == c.coeffs[k - 1]);
}

TEST_CASE("F_d against elementary closed forms") {
  // d=3: sinh(z)/z; d=2: I0(z); d=5: 3(z cosh z - sinh z)/z^3
  CHECK(fd_eval_series(3, 0.5, 1e-17) == doctest::Approx(1.0421906109874947).epsilon(1e-15));
  CHECK(fd_eval_closed(3, 0.5, 1e-17) == doctest::Approx(1.0421906109874947).epsilon(1e-14));
  CHECK(fd_eval_series(2, 1.0, 1e-17) == doctest::Approx(1.2660658777520084).epsilon(1e-15));
  CHECK(fd_eval_series(2, 0.3, 1e-17) == doctest::Approx(1.0226268793515970).epsilon(1e-15));
  CHECK(fd_eval_series(5, 0.7, 1e-17) == doctest::Approx(1.0498653245083960).epsilon(1e-15));
  CHECK(fd_eval_closed(5, 0.7, 1e-17) == doctest::Approx(1.0498653245083960).epsilon(1e-14));
}

TEST_CASE("F_d at zero is exactly one") {
  for (int d : {2, 3, 10, 64}) {
    CHECK(fd_eval_series(d, 0.0, 1e-16) == 1.0);
    CHECK(fd_eval_closed(d, 0.0, 1e-16) == 1.0);
  }
}

TEST_CASE("series and closed form agree") {
  double worst = 0.0;
  for (int d = 2; d <= 64; d += 7)
    for (int i = 0; i <= 20; ++i) {
      const double z = i / 20.0;
      worst = std::max(worst, std::abs(fd_eval_series(d, z, 1e-16) - fd_eval_closed(d, z, 1e-16)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("multiprecision series matches double") {
  mpf_class z(0.8, 256);
  const mpf_class v = fd_eval_series_mp(7, z, std::log(1e-40), 256);
  CHECK(v.get_d() == doctest::Approx(fd_eval_series(7, 0.8, 1e-17)).epsilon(1e-15));
}

TEST_CASE("series order grows with the precision") {
  CHECK(fd_series_order(1.0, std::log(1e-10)) < fd_series_order(1.0, std::log(1e-40)));
  CHECK(fd_series_order(1.0, -2000.0) > 100);
}

TEST_CASE("hypergeometric identity exact") {
  for (int d = 2; d <= 12; ++d)
    for (int n = 0; n <= 10; ++n) {
      CHECK(a_n_sum(d, n) == a_n_closed(d, n));
      if (n % 2 == 1) CHECK(a_n_sum(d, n) == 0);
    }
  // a_2(d) = 1/(2d) once more from the closed side
  CHECK(a_n_closed(6, 2) == make_rational(1, 12));
}
