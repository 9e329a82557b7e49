#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "radialnet/network.hpp"
#include "radialnet/profile.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

namespace {

DepthTwoNetwork small_net(Activation act) {
  DepthTwoNetwork net;
  net.dim = 2;
  net.activation = act;
  net.add_unit({1.0, 0.0}, 0.5, 2.0);
  net.add_unit({0.0, -1.0}, -0.25, -1.0);
  net.output_bias = 0.125;
  net.meta = {{"target", "test"}};
  return net;
}

}  // namespace

TEST_CASE("hand-evaluated network") {
  const auto relu = small_net(Activation::ReLU);
  const double x[2] = {0.25, -0.5};
  // 0.125 + 2 relu(0.75) - relu(0.25)
  CHECK(eval_network(relu, x) == doctest::Approx(0.125 + 1.5 - 0.25));
  const auto ex = small_net(Activation::Exp);
  CHECK(eval_network(ex, x) == doctest::Approx(0.125 + 2 * std::exp(0.75) - std::exp(0.25)));
}

TEST_CASE("json round trip is exact") {
  SeededRng r(1);
  DepthTwoNetwork net;
  net.dim = 4;
  net.activation = Activation::Exp;
  for (int i = 0; i < 20; ++i) net.add_unit(sample_unit_sphere(4, r), r.normal(), r.normal() / 3.0);
  net.output_bias = 1.0 / 3.0;
  const auto back = network_from_json(nlohmann::json::parse(network_to_json(net).dump()));
  CHECK(back.dim == 4);
  CHECK(back.activation == Activation::Exp);
  REQUIRE(back.width() == net.width());
  for (std::size_t i = 0; i < net.width(); ++i) {
    CHECK(back.hidden[i].weight == net.hidden[i].weight);
    CHECK(back.hidden[i].bias == net.hidden[i].bias);
    CHECK(back.output_weights[i] == net.output_weights[i]);
  }
  CHECK(back.output_bias == net.output_bias);
}

TEST_CASE("malformed network json is rejected") {
  CHECK_THROWS_AS(network_from_json(nlohmann::json::parse(R"({"dim": 2})")), std::invalid_argument);
  auto j = network_to_json(small_net(Activation::ReLU));
  j["v"] = {1.0};
  CHECK_THROWS_AS(network_from_json(j), std::invalid_argument);
  j = network_to_json(small_net(Activation::ReLU));
  j["activation"] = "tanh";
  CHECK_THROWS(network_from_json(j));
}

TEST_CASE("activation names") {
  CHECK(parse_activation("relu") == Activation::ReLU);
  CHECK(parse_activation("exp") == Activation::Exp);
  CHECK(to_string(Activation::ReLU) == "relu");
}

TEST_CASE("profile zoo") {
  CHECK(make_profile("abs_half")(0.2) == doctest::Approx(0.3));
  CHECK(make_profile("linear")(0.7) == doctest::Approx(0.7));
  CHECK(make_profile("square")(0.5) == doctest::Approx(0.25));
  CHECK(make_profile("cosine")(1.0) == doctest::Approx(2.0 / M_PI));
  CHECK(make_profile("zero")(0.4) == 0.0);
  CHECK(make_profile("const:0.3")(0.9) == doctest::Approx(0.3));
  CHECK(monomial_profile(2)(0.5) == doctest::Approx(0.0625));
  CHECK(fd_profile(3)(0.5) == doctest::Approx(1.0421906109874947));
  CHECK_THROWS(make_profile("nope"));
}

TEST_CASE("expression parser") {
  const auto f = parse_expression("2*z^2 - abs(z - 0.5) + sin(pi*z)/4");
  CHECK(f(0.3) == doctest::Approx(2 * 0.09 - 0.2 + std::sin(M_PI * 0.3) / 4));
  CHECK(parse_expression("-z^2")(3.0) == doctest::Approx(-9.0));
  CHECK(parse_expression("2^3^2")(0.0) == doctest::Approx(512.0));
  CHECK(parse_expression("exp(log(r))")(0.4) == doctest::Approx(0.4));
  CHECK_THROWS(parse_expression("z +"));
  CHECK_THROWS(parse_expression("foo(z)"));
  CHECK_THROWS(parse_expression("(z"));
}

TEST_CASE("lipschitz spot check flags steep profiles") {
  CHECK(lipschitz_spot_check(make_profile("cosine")).empty());
  CHECK(!lipschitz_spot_check(make_profile("expr:3*z")).empty());
}
