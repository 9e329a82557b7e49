#include <doctest.h>

#include <cmath>

#include "radialnet/kernels.hpp"
#include "radialnet/pipeline.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

namespace {

PipelineOptions small_budget() {
  PipelineOptions o;
  o.budget = {20000, 10};
  return o;
}

}  // namespace

TEST_CASE("constant profile needs no hidden units") {
  SeededRng r(3);
  const auto res = build_radial_network(constant_profile(0.75), 4, 0.1, Activation::ReLU, r, small_budget());
  CHECK(res.network.width() == 0);
  CHECK(res.network.output_bias == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(res.report.sup_estimate <= 1e-12);
  CHECK(res.plan.monomial_degrees.empty());
}

TEST_CASE("tuned linear, d = 3") {
  SeededRng r(11);
  const auto res = build_radial_network(make_profile("linear"), 3, 0.25, Activation::ReLU, r, small_budget());
  CHECK(res.report.sup_estimate <= 0.25);
  CHECK(res.plan.network_width == res.network.width());
  CHECK(res.plan.network_width <= res.plan.total_width.exact.value());
  CHECK(res.plan.monomial_degrees.size() == res.plan.monomial_accuracies.size());
  CHECK(res.plan.monomial_degrees.size() == res.monomial_ridges.size());

  SUBCASE("merged and concatenated networks agree") {
    const auto cat = concatenated_network(res);
    CHECK(cat.width() >= res.network.width());
    const PackedNetwork a(res.network), b(cat);
    SeededRng pr(5);
    for (int i = 0; i < 200; ++i) {
      std::vector<double> x(3);
      sample_ball_into(x, pr);
      CHECK(a.eval(x) == doctest::Approx(b.eval(x)).epsilon(1e-9));
    }
  }

  SUBCASE("triangle inequality audit") {
    const auto audit = triangle_audit(res, {20000, 10}, 9);
    CHECK(audit.parts.size() == res.plan.monomial_degrees.size());
    CHECK(audit.holds());
  }
}

TEST_CASE("tuned build is deterministic") {
  SeededRng a(21), b(21);
  const auto x = build_radial_network(make_profile("square", 2.0), 3, 0.2, Activation::ReLU, a, small_budget());
  const auto y = build_radial_network(make_profile("square", 2.0), 3, 0.2, Activation::ReLU, b, small_budget());
  CHECK(network_to_json(x.network) == network_to_json(y.network));
  CHECK(x.report.sup_estimate == y.report.sup_estimate);
}

TEST_CASE("theoretical width overflows at small epsilon") {
  const auto w = theoretical_width(3, 0.05);
  CHECK(w.ln_width > std::log(2e7));
  CHECK(!w.exact.has_value());

  SeededRng r(1);
  PipelineOptions o = small_budget();
  o.mode = BuildMode::Theoretical;
  CHECK_THROWS_AS(build_radial_network(make_profile("abs_half"), 3, 0.05, Activation::ReLU, r, o), WidthOverflow);
  try {
    build_radial_network(make_profile("abs_half"), 3, 0.05, Activation::ReLU, r, o);
  } catch (const WidthOverflow& e) {
    CHECK(e.required().ln_width == doctest::Approx(w.ln_width).epsilon(1e-12));
    CHECK(e.budget() == o.width_budget);
  }
}

TEST_CASE("theoretical width grows with d and shrinking epsilon") {
  CHECK(theoretical_width(3, 0.5).ln_width < theoretical_width(30, 0.5).ln_width);
  CHECK(theoretical_width(3, 0.5).ln_width < theoretical_width(3, 0.25).ln_width);
}

TEST_CASE("plan json") {
  SeededRng r(2);
  const auto res = build_radial_network(make_profile("linear"), 3, 0.25, Activation::ReLU, r, small_budget());
  const auto j = res.plan.to_json();
  CHECK(j.at("d") == 3);
  CHECK(j.contains("even_poly"));
  CHECK(j.at("network_width") == res.network.width());
}
