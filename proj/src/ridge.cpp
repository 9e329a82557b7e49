#include "radialnet/ridge.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "radialnet/sphere.hpp"

namespace radialnet {

double EvenRidge::eval(double t) const {
  const double t2 = t * t;
  double s = 0.0;
  for (std::size_t m = coeff.size(); m-- > 0;) s = s * t2 + coeff[m];
  return s;
}

double EvenRidge::abs_sum() const {
  double s = 0.0;
  for (double c : coeff) s += std::fabs(c);
  return s;
}

EvenRidge ridge_from_rationals(const std::vector<BigRational>& q, double tail_bound) {
  EvenRidge r;
  r.tail_bound = tail_bound;
  for (const auto& c : q) {
    double v = to_double(c);
    if (!std::isfinite(v)) throw std::range_error("ridge coefficient outside double range");
    r.coeff.push_back(v);
  }
  return r;
}

std::vector<double> sample_directions(int d, std::size_t count, SeededRng& rng) {
  std::vector<double> dirs(count * d);
  for (std::size_t i = 0; i < count; ++i)
    sample_unit_sphere_into(std::span<double>(dirs.data() + i * d, d), rng);
  return dirs;
}

DepthTwoNetwork assemble_relu_ridge(int d, const std::vector<double>& dirs,
                                    const UnivariateApprox& h, double bias) {
  if (h.activation != Activation::ReLU) throw std::invalid_argument("ReLU approximant expected");
  const std::size_t n = dirs.size() / d;
  if (n * d != dirs.size() || n == 0) throw std::invalid_argument("direction buffer size mismatch");
  DepthTwoNetwork net;
  net.dim = d;
  net.activation = Activation::ReLU;
  net.hidden.reserve(n * h.width());
  net.output_weights.reserve(n * h.width());
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : h.terms) {
      std::vector<double> w(dirs.begin() + i * d, dirs.begin() + (i + 1) * d);
      for (double& x : w) x *= t.beta;
      net.add_unit(std::move(w), -t.gamma, t.alpha * inv);
    }
  }
  net.output_bias = bias + h.constant;
  return net;
}

DepthTwoNetwork assemble_cosh_ridge(int d, const std::vector<double>& dirs,
                                    const std::vector<CoshTerm>& terms, double bias) {
  const std::size_t n = dirs.size() / d;
  if (n * d != dirs.size() || n == 0) throw std::invalid_argument("direction buffer size mismatch");
  DepthTwoNetwork net;
  net.dim = d;
  net.activation = Activation::Exp;
  const double inv = 0.5 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : terms) {
      std::vector<double> w(dirs.begin() + i * d, dirs.begin() + (i + 1) * d);
      for (double& x : w) x *= t.scale;
      std::vector<double> wm = w;
      for (double& x : wm) x = -x;
      net.add_unit(std::move(w), 0.0, t.weight * inv);
      net.add_unit(std::move(wm), 0.0, t.weight * inv);
    }
  }
  net.output_bias = bias;
  return net;
}

DepthTwoNetwork compact_network(const DepthTwoNetwork& net) {
  DepthTwoNetwork out;
  out.dim = net.dim;
  out.activation = net.activation;
  out.output_bias = net.output_bias;
  out.meta = net.meta;
  std::map<std::vector<double>, std::size_t> seen;
  for (std::size_t i = 0; i < net.width(); ++i) {
    std::vector<double> key = net.hidden[i].weight;
    key.push_back(net.hidden[i].bias);
    auto [it, fresh] = seen.emplace(std::move(key), out.width());
    if (fresh) out.add_unit(net.hidden[i].weight, net.hidden[i].bias, net.output_weights[i]);
    else out.output_weights[it->second] += net.output_weights[i];
  }
  return out;
}

}  // namespace radialnet

namespace radialnet {

RidgeGrowthResult grow_ridge_network(
    int d, const std::function<DepthTwoNetwork(const std::vector<double>&)>& assemble,
    std::size_t units_per_direction, const RadialProfile& target, double epsilon, SeededRng& rng,
    const RidgeGrowth& growth) {
  const std::uint64_t verify_seed = rng.next_u64();
  SeededRng dir_rng(rng.next_u64());
  std::vector<double> dirs;
  VerifyBudget screen = growth.budget;
  screen.samples = std::max<std::size_t>(1000, growth.budget.samples / 10);

  RidgeGrowthResult best;
  bool have_best = false;
  for (std::size_t n = std::max<std::size_t>(1, growth.dirs_start); n <= growth.dirs_max; n *= 2) {
    if (static_cast<double>(n) * static_cast<double>(units_per_direction) > growth.width_budget) break;
    std::vector<double> more = sample_directions(d, n - dirs.size() / d, dir_rng);
    dirs.insert(dirs.end(), more.begin(), more.end());
    DepthTwoNetwork net = assemble(dirs);
    PackedNetwork packed(net);
    ErrorReport rep = estimate_sup_error(packed, target, screen, verify_seed);
    if (rep.sup_estimate <= epsilon) rep = estimate_sup_error(packed, target, growth.budget, verify_seed);
    const bool pass = rep.sup_estimate <= epsilon && rep.n_samples == growth.budget.samples;
    if (pass || !have_best || rep.sup_estimate < best.report.sup_estimate) {
      best = {std::move(net), rep, n, dirs, verify_seed};
      have_best = true;
    }
    if (pass) return best;
  }
  if (!have_best)
    throw WidthOverflow("tuned growth: even the starting network exceeds the width budget",
                        WidthEstimate{std::log(static_cast<double>(growth.dirs_start * units_per_direction)),
                                      std::log10(static_cast<double>(growth.dirs_start * units_per_direction)),
                                      BigInt(static_cast<unsigned long>(growth.dirs_start * units_per_direction))},
                        growth.width_budget);
  throw VerificationFailure("tuned growth exhausted at " + std::to_string(best.directions) +
                                " directions; best empirical sup error " +
                                std::to_string(best.report.sup_estimate),
                            best.network, best.report);
}

}  // namespace radialnet
