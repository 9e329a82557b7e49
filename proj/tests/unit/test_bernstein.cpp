#include <doctest.h>

#include <cmath>

#include "radialnet/bernstein.hpp"

using namespace radialnet;

TEST_CASE("bernstein reproduces affine functions") {
  for (int n : {1, 5, 40}) {
    const auto p = bernstein_operator([](double z) { return 3.0 - 2.0 * z; }, n);
    CHECK(p.degree() == n);
    for (double z : {0.0, 0.13, 0.5, 0.99, 1.0}) CHECK(p.eval(z) == doctest::Approx(3.0 - 2.0 * z).epsilon(1e-14));
  }
}

TEST_CASE("bernstein of z^2 has the 1/n term") {
  // B_n(z^2) = z^2 + z(1-z)/n
  const int n = 12;
  const auto p = bernstein_operator([](double z) { return z * z; }, n);
  for (double z : {0.1, 0.4, 0.77}) CHECK(p.eval(z) == doctest::Approx(z * z + z * (1 - z) / n).epsilon(1e-13));
}

TEST_CASE("degree formula") {
  CHECK(even_poly_degree(0.5) == 64);
  CHECK(even_poly_degree(0.9) == 12);
  CHECK(even_poly_degree(0.4) == 126);
}

TEST_CASE("abs_half at eps = 0.5") {
  const auto poly = even_poly_approx(make_profile("abs_half"), 0.5);
  CHECK(poly.degree == 64);
  CHECK(poly.coeffs.size() == 33);
  CHECK(poly.grid_error <= 0.5);
  CHECK(poly.shift == 0);  // phi(1/2) = 0

  const BigRational cap = pow(make_rational(2), 64);
  for (const auto& c : poly.coeffs) CHECK(abs(c) <= cap);

  // even in t: p(t) - p(-t) is exactly zero
  for (long num : {1L, 3L, 7L, 13L}) {
    const BigRational t = make_rational(num, 16);
    CHECK(poly.eval_exact(t) - poly.eval_exact(-t) == 0);
  }

  // Horner and de Casteljau agree where both are tame
  for (double t : {0.0, 0.25, 0.5}) CHECK(std::abs(poly.eval(t) - poly.eval_bernstein(t)) < 1e-6);
}

TEST_CASE("samples are quantized") {
  EvenPolyOptions opt;
  opt.sample_bits = 20;
  const auto poly = even_poly_approx(make_profile("cosine"), 0.5, opt);
  const BigRational grid = pow(make_rational(1, 2), 20);
  for (const auto& s : poly.bernstein_coeffs) {
    const BigRational q = s / grid;
    CHECK(q.get_den() == 1);
  }
}

TEST_CASE("shift is phi(1/2), p approximates phi on [0,1]") {
  EvenPolyOptions opt;
  opt.degree_override = 16;
  const auto poly = even_poly_approx(make_profile("linear"), 0.5, opt);
  CHECK(poly.degree == 16);
  CHECK(poly.shift == make_rational(1, 2));
  for (double z : {0.0, 0.3, 0.5, 0.8, 1.0}) CHECK(std::abs(poly.eval(z) - z) <= poly.grid_error + 1e-12);
}

TEST_CASE("smallest passing degree is monotone in the target") {
  const auto phi = make_profile("abs_half");
  const int loose = smallest_passing_degree(phi, 0.2);
  const int tight = smallest_passing_degree(phi, 0.05);
  CHECK(loose % 2 == 0);
  CHECK(loose <= tight);
}

TEST_CASE("json carries degree and coefficients") {
  EvenPolyOptions opt;
  opt.degree_override = 8;
  const auto j = even_poly_approx(make_profile("square", 2.0), 0.5, opt).to_json();
  CHECK(j.at("degree") == 8);
  CHECK(j.at("coeffs").size() == 5);
}
