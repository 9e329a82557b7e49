#include <doctest.h>

#include <cmath>

#include "radialnet/expfeat.hpp"
#include "radialnet/specialfn.hpp"

using namespace radialnet;

TEST_CASE("width formula") {
  CHECK(exp_network_width(0.1) == 3600);
  CHECK(exp_network_width(0.3) == 400);
  CHECK(exp_network_width(0.5) == 144);
  CHECK(exp_network_width(0.7) == 74);
  CHECK(exp_network_width(1.0) == 36);
}

TEST_CASE("sampled network shape") {
  SeededRng r(1);
  const auto net = sample_exp_network(7, 225, r);
  CHECK(net.dim == 7);
  CHECK(net.activation == Activation::Exp);
  CHECK(net.width() == 225);
  CHECK(net.output_bias == 0.0);
  for (std::size_t i = 0; i < net.width(); ++i) {
    double n2 = 0;
    for (double w : net.hidden[i].weight) n2 += w * w;
    CHECK(std::abs(n2 - 1.0) < 1e-12);
    CHECK(net.hidden[i].bias == 0.0);
    CHECK(net.output_weights[i] == doctest::Approx(1.0 / 225));
  }
}

TEST_CASE("network mean is F_d") {
  // average of many independent width-100 nets at a fixed point
  const int d = 4;
  std::vector<double> x = {0.5, 0.0, -0.5, 0.5};
  const double z = std::sqrt(0.75);
  double mean = 0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) {
    SeededRng r(100 + i);
    mean += eval_network(sample_exp_network(d, 100, r), x);
  }
  mean /= reps;
  CHECK(std::abs(mean - fd_eval_series(d, z, 1e-16)) < 0.005);
}

TEST_CASE("build meets epsilon and is reproducible") {
  SeededRng a(5), b(5);
  const auto ra = build_exp_network(3, 0.25, a);
  const auto rb = build_exp_network(3, 0.25, b);
  CHECK(ra.certificate.width == 576);
  CHECK(ra.certificate.empirical_sup_error <= 0.25);
  CHECK(ra.certificate.empirical_sup_error == rb.certificate.empirical_sup_error);
  CHECK(network_to_json(ra.network) == network_to_json(rb.network));
  CHECK(ra.network.meta.at("target") == "fd");
  const auto j = ra.certificate.to_json();
  CHECK(j.contains("width"));
  CHECK(j.contains("report"));
}

TEST_CASE("bad arguments") {
  SeededRng r(1);
  CHECK_THROWS(build_exp_network(3, 0.0, r));
  CHECK_THROWS(build_exp_network(3, 0.1, r, 0));
}
