#include <doctest.h>

#include <cmath>
#include <vector>

#include "radialnet/kernels.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

namespace {

DepthTwoNetwork random_net(int d, std::size_t width, Activation act, std::uint64_t seed) {
  SeededRng r(seed);
  DepthTwoNetwork net;
  net.dim = d;
  net.activation = act;
  for (std::size_t i = 0; i < width; ++i) net.add_unit(sample_unit_sphere(d, r), 0.3 * r.normal(), r.normal() / width);
  net.output_bias = 0.1;
  return net;
}

std::vector<double> ball_points(int d, std::size_t n, std::uint64_t seed) {
  SeededRng r(seed);
  std::vector<double> pts(n * d);
  for (std::size_t i = 0; i < n; ++i) sample_ball_into(std::span<double>(pts.data() + i * d, d), r);
  return pts;
}

}  // namespace

TEST_CASE("vexp accuracy") {
  double worst = 0;
  for (int i = -7000; i <= 7000; ++i) {
    const double x = i / 100.0;
    worst = std::max(worst, std::abs(vexp(x) / std::exp(x) - 1.0));
  }
  CHECK(worst < 4e-16);
  CHECK(vexp(0.0) == 1.0);
}

TEST_CASE("packed, serial and reference agree") {
  for (auto act : {Activation::ReLU, Activation::Exp})
    for (int d : {2, 3, 17}) {
      for (std::size_t w : {0u, 1u, 7u, 8u, 9u, 513u, 1500u}) {
        const auto net = random_net(d, w, act, 10 * d + w);
        const PackedNetwork packed(net);
        const std::size_t n = 77;
        const auto pts = ball_points(d, n, 5);
        std::vector<double> a(n), b(n), c(n);
        packed.eval_batch(pts, a);
        packed.eval_batch_serial(pts, b);
        eval_batch_reference(net, pts, c);
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(a[i] == b[i]);  // same arithmetic, bitwise
          CHECK(a[i] == packed.eval(std::span<const double>(pts.data() + i * d, d)));
          CHECK(a[i] == doctest::Approx(c[i]).epsilon(1e-12));
        }
      }
    }
}

TEST_CASE("batch size does not change values") {
  const auto net = random_net(5, 300, Activation::Exp, 3);
  const PackedNetwork packed(net);
  const auto pts = ball_points(5, 1000, 8);
  std::vector<double> all(1000), part(3);
  packed.eval_batch(pts, all);
  packed.eval_batch(std::span<const double>(pts.data() + 5 * 500, 15), part);
  for (int i = 0; i < 3; ++i) CHECK(part[i] == all[500 + i]);
}

TEST_CASE("dimension mismatch throws") {
  const auto net = random_net(3, 10, Activation::ReLU, 1);
  const PackedNetwork packed(net);
  std::vector<double> pts(7), out(2);
  CHECK_THROWS(packed.eval_batch(pts, out));
}
