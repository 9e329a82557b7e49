#include "radialnet/activation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radialnet {

double UnivariateApprox::eval(double x) const {
  double s = constant;
  for (const auto& t : terms) s += t.alpha * activate(activation, t.beta * x - t.gamma);
  return s;
}

double UnivariateApprox::eval_pwl(double x) const {
  if (knots.empty()) return constant;
  if (x <= knots.front()) return values.front();
  if (x >= knots.back()) return values.back();
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  std::size_t j = static_cast<std::size_t>(it - knots.begin()) - 1;
  double w = (x - knots[j]) / (knots[j + 1] - knots[j]);
  return values[j] + w * (values[j + 1] - values[j]);
}

UnivariateApprox relu_interpolant(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size())
    throw std::invalid_argument("need at least two knots with matching values");
  for (std::size_t j = 0; j < knots.size(); ++j) {
    if (!std::isfinite(values[j])) throw std::invalid_argument("non-finite target sample");
    if (j && !(knots[j] > knots[j - 1])) throw std::invalid_argument("knots must increase");
  }
  const std::size_t K = knots.size() - 1;
  UnivariateApprox h;
  h.activation = Activation::ReLU;
  h.constant = values[0];
  h.radius = std::max(std::fabs(knots.front()), std::fabs(knots.back()));
  double prev = 0.0;
  for (std::size_t j = 0; j <= K; ++j) {
    double slope = j < K ? (values[j + 1] - values[j]) / (knots[j + 1] - knots[j]) : 0.0;
    h.terms.push_back({slope - prev, 1.0, knots[j]});
    prev = slope;
  }
  h.knots = std::move(knots);
  h.values = std::move(values);
  return h;
}

UnivariateApprox relu_uniform(const std::function<double(double)>& target, double R, std::size_t K) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  if (K < 1) throw std::invalid_argument("need at least one segment");
  std::vector<double> t(K + 1), v(K + 1);
  for (std::size_t j = 0; j <= K; ++j) {
    t[j] = j == K ? R : -R + 2.0 * R * static_cast<double>(j) / static_cast<double>(K);
    v[j] = target(t[j]);
  }
  UnivariateApprox h = relu_interpolant(std::move(t), std::move(v));
  h.radius = R;
  h.certified_delta = grid_error(h, target, R);
  return h;
}

UnivariateApprox approx_univariate_relu(const std::function<double(double)>& target, double R,
                                        double L, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  const double k = std::ceil(2.0 * R * L / delta);
  if (k > 1e9) throw std::invalid_argument("knot count too large");
  return relu_uniform(target, R, static_cast<std::size_t>(std::max(k, 1.0)));
}

UnivariateApprox approx_univariate_relu_measured(const std::function<double(double)>& target,
                                                 double R, double delta, std::size_t max_segments) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  std::size_t hi = 1;
  UnivariateApprox best = relu_uniform(target, R, hi);
  while (best.certified_delta > delta) {
    if (hi >= max_segments) throw std::runtime_error("PWL approximant needs more than max_segments knots");
    hi *= 2;
    best = relu_uniform(target, R, hi);
  }
  std::size_t lo = hi / 2;  // lo fails (or is 0)
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    UnivariateApprox h = relu_uniform(target, R, mid);
    if (h.certified_delta <= delta) {
      hi = mid;
      best = std::move(h);
    } else {
      lo = mid;
    }
  }
  return best;
}

double grid_error(const UnivariateApprox& h, const std::function<double(double)>& target, double R,
                  std::size_t points, double offset, bool with_midpoints) {
  double err = 0.0;
  const double step = 2.0 * R / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    double x = std::clamp(-R + (static_cast<double>(i) + offset) * step, -R, R);
    err = std::max(err, std::fabs(h.eval(x) - target(x)));
  }
  if (with_midpoints)
    for (std::size_t j = 0; j + 1 < h.knots.size(); ++j) {
      double x = 0.5 * (h.knots[j] + h.knots[j + 1]);
      err = std::max(err, std::fabs(h.eval(x) - target(x)));
    }
  return err;
}

DepthTwoNetwork substitute_activation(const DepthTwoNetwork& exp_net, double delta) {
  if (exp_net.activation != Activation::Exp)
    throw std::invalid_argument("substitute_activation needs an exp network");
  exp_net.validate();
  for (const auto& u : exp_net.hidden) {
    double n2 = 0.0;
    for (double w : u.weight) n2 += w * w;
    if (std::sqrt(n2) > 1.0 + 1e-12) throw std::invalid_argument("hidden weight norm exceeds 1");
    if (u.bias != 0.0) throw std::invalid_argument("exp network biases must be zero");
  }
  const UnivariateApprox nexp =
      approx_univariate_relu([](double t) { return std::exp(t); }, 1.0, std::numbers::e, delta);

  DepthTwoNetwork out;
  out.dim = exp_net.dim;
  out.activation = Activation::ReLU;
  out.meta = exp_net.meta;
  out.hidden.reserve(exp_net.width() * nexp.width());
  out.output_weights.reserve(exp_net.width() * nexp.width());
  double vsum = 0.0;
  for (std::size_t i = 0; i < exp_net.width(); ++i) {
    const double v = exp_net.output_weights[i];
    vsum += v;
    for (const auto& t : nexp.terms) {
      std::vector<double> w = exp_net.hidden[i].weight;
      for (double& x : w) x *= t.beta;
      out.add_unit(std::move(w), -t.gamma, v * t.alpha);
    }
  }
  out.output_bias = exp_net.output_bias + nexp.constant * vsum;
  return out;
}

}  // namespace radialnet
