#include <doctest.h>

#include <cmath>

#include "radialnet/expfeat.hpp"
#include "radialnet/verify.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

namespace {

DepthTwoNetwork constant_net(int d, double c) {
  DepthTwoNetwork net;
  net.dim = d;
  net.output_bias = c;
  return net;
}

DepthTwoNetwork relu_net(int d, std::uint64_t seed) {
  SeededRng r(seed);
  DepthTwoNetwork net;
  net.dim = d;
  for (int i = 0; i < 40; ++i) net.add_unit(sample_unit_sphere(d, r), 0.5 * r.normal(), r.normal() / 10);
  return net;
}

}  // namespace

TEST_CASE("width-0 net against its constant target") {
  const auto rep = estimate_sup_error(constant_net(4, 0.7), constant_profile(0.7), {2000, 5}, 1);
  CHECK(rep.sup_estimate == 0.0);
  CHECK(rep.l2_estimate == 0.0);
}

TEST_CASE("constant gap is found exactly") {
  const auto rep = estimate_sup_error(constant_net(6, 0.5), constant_profile(0.2), {5000, 10}, 2);
  CHECK(rep.sup_estimate == doctest::Approx(0.3).epsilon(1e-12));
  const auto l2 = estimate_l2_error(constant_net(6, 0.5), constant_profile(0.2), 4000, 3);
  CHECK(std::abs(l2.mse - 0.09) <= 3 * l2.std_error + 1e-12);
}

TEST_CASE("radial net: direction averaging changes nothing") {
  // width 0 against phi(z) = z: the radius grid contains r = 1
  const auto rep = estimate_sup_error(constant_net(3, 0.0), make_profile("linear"), {4000, 10}, 4);
  CHECK(rep.sup_estimate == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("witness reproduces the estimate") {
  const auto net = relu_net(5, 9);
  const auto target = make_profile("abs_half");
  const auto rep = estimate_sup_error(net, target, {20000, 10}, 77);
  REQUIRE(rep.argmax_point.size() == 5);
  const PackedNetwork packed(net);
  CHECK(pointwise_error(packed, target, rep.argmax_point) == rep.sup_estimate);
  double n2 = 0;
  for (double x : rep.argmax_point) n2 += x * x;
  CHECK(n2 <= 1.0 + 1e-12);
  CHECK(rep.sup_estimate >= rep.l2_estimate);
  CHECK(rep.n_samples == 20000);
  CHECK(rep.seed == 77);
}

TEST_CASE("deterministic and policy independent") {
  const auto net = relu_net(4, 1);
  const auto t = make_profile("cosine");
  const auto a = estimate_sup_error(net, t, {10000, 10}, 5, ExecPolicy::Parallel);
  const auto b = estimate_sup_error(net, t, {10000, 10}, 5, ExecPolicy::Serial);
  const auto c = estimate_sup_error(net, t, {10000, 10}, 5);
  CHECK(a.sup_estimate == b.sup_estimate);
  CHECK(a.sup_estimate == c.sup_estimate);
  CHECK(a.argmax_point == b.argmax_point);
}

TEST_CASE("larger budgets do not lose the maximum") {
  const auto net = relu_net(8, 3);
  const auto t = make_profile("linear");
  const auto small = estimate_sup_error(net, t, {2000, 0}, 12);
  const auto big = estimate_sup_error(net, t, {20000, 0}, 12);
  CHECK(big.sup_estimate >= small.sup_estimate);
}

TEST_CASE("l2 dominated by sup squared") {
  const auto net = relu_net(3, 4);
  const auto t = make_profile("square");
  const auto rep = estimate_sup_error(net, t, {10000, 10}, 6);
  const auto l2 = estimate_l2_error(net, t, 10000, 6);
  CHECK(l2.mse <= rep.sup_estimate * rep.sup_estimate + 3 * l2.std_error);
  CHECK(l2.n == 10000);
}

TEST_CASE("report json round trip") {
  const auto rep = estimate_sup_error(relu_net(2, 5), make_profile("linear"), {1000, 2}, 8);
  const auto back = ErrorReport::from_json(nlohmann::json::parse(rep.to_json().dump()));
  CHECK(back.sup_estimate == rep.sup_estimate);
  CHECK(back.argmax_point == rep.argmax_point);
  CHECK(back.seed == rep.seed);
  CHECK(back.method == rep.method);
}

TEST_CASE("estimator errors") {
  const auto net = relu_net(3, 1);
  const PackedNetwork packed(net);
  std::vector<double> x(2, 0.1);
  CHECK_THROWS(pointwise_error(packed, make_profile("linear"), x));
  CHECK_THROWS(estimate_sup_error(net, make_profile("linear"), {10, 1}, 1));
}

TEST_CASE("van der corput") {
  CHECK(van_der_corput(0) == 0.0);
  CHECK(van_der_corput(1) == 0.5);
  CHECK(van_der_corput(2) == 0.25);
  CHECK(van_der_corput(3) == 0.75);
  CHECK(van_der_corput(6) == 0.375);
}

TEST_CASE("exp features for F_10 at width 3600") {
  SeededRng r(2024);
  const auto net = sample_exp_network(10, 3600, r);
  const auto rep = estimate_sup_error(net, fd_profile(10), {}, 31);
  CHECK(rep.sup_estimate <= 0.1);
}
