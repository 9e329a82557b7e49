#include <doctest.h>

#include <cmath>
#include <numbers>

#include "radialnet/activation.hpp"
#include "radialnet/expfeat.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

TEST_CASE("relu interpolant hits the knots and is flat outside") {
  const auto h = relu_interpolant({-1.0, -0.2, 0.5, 1.0}, {2.0, -1.0, 0.5, 0.0});
  CHECK(h.width() == 4);
  CHECK(h.eval(-1.0) == doctest::Approx(2.0));
  CHECK(h.eval(-0.2) == doctest::Approx(-1.0));
  CHECK(h.eval(0.5) == doctest::Approx(0.5));
  CHECK(h.eval(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(h.eval(-3.0) == doctest::Approx(2.0));
  CHECK(h.eval(4.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(h.eval(0.15) == doctest::Approx(h.eval_pwl(0.15)));
}

TEST_CASE("knot rule for exp on [-1,1]") {
  const double delta = 0.01;
  const auto h = approx_univariate_relu([](double t) { return std::exp(t); }, 1.0, std::numbers::e, delta);
  const auto K = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::e / delta));
  CHECK(h.width() == K + 1);
  CHECK(grid_error(h, [](double t) { return std::exp(t); }, 1.0) <= delta);
  // interpolation error of exp is far below the Lipschitz rule
  const auto m = approx_univariate_relu_measured([](double t) { return std::exp(t); }, 1.0, delta);
  CHECK(m.width() < h.width());
  CHECK(grid_error(m, [](double t) { return std::exp(t); }, 1.0, 10001, 0.37) <= delta);
}

TEST_CASE("uniform knots") {
  const auto h = relu_uniform([](double t) { return t * t; }, 2.0, 8);
  CHECK(h.knots.size() == 9);
  CHECK(h.knots.front() == -2.0);
  CHECK(h.knots.back() == 2.0);
  // chord error of t^2 with spacing 1/2 is 1/16
  CHECK(grid_error(h, [](double t) { return t * t; }, 2.0) == doctest::Approx(1.0 / 16).epsilon(1e-6));
}

TEST_CASE("activation substitution keeps the function within delta") {
  SeededRng r(3);
  const auto exp_net = sample_exp_network(3, 100, r);
  const double delta = 0.02;
  const auto relu_net = substitute_activation(exp_net, delta);
  CHECK(relu_net.activation == Activation::ReLU);
  CHECK(relu_net.width() % exp_net.width() == 0);
  double worst = 0;
  std::vector<double> x(3);
  for (int i = 0; i < 2000; ++i) {
    sample_ball_into(x, r);
    worst = std::max(worst, std::abs(eval_network(relu_net, x) - eval_network(exp_net, x)));
  }
  CHECK(worst <= delta);
}

TEST_CASE("substitution preconditions") {
  DepthTwoNetwork net;
  net.dim = 2;
  net.activation = Activation::Exp;
  net.add_unit({0.6, 0.8}, 0.1, 1.0);
  CHECK_THROWS(substitute_activation(net, 0.1));
  net.hidden[0].bias = 0.0;
  net.hidden[0].weight = {1.0, 1.0};
  CHECK_THROWS(substitute_activation(net, 0.1));
  net.activation = Activation::ReLU;
  CHECK_THROWS(substitute_activation(net, 0.1));
}
