#include "radialnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

namespace radialnet {

namespace {

constexpr std::uint64_t kBallStream = 1ULL << 62;
constexpr std::size_t kChunk = 8192;

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void project_to_ball(std::span<double> x) {
  double r = norm(x);
  if (r > 1.0)
    for (double& v : x) v /= r;
}

void make_sample(std::size_t index, std::size_t n_radial, std::uint64_t seed,
                 std::span<double> out) {
  if (index < n_radial) {
    SeededRng rng(derive_seed(seed, index));
    sample_unit_sphere_into(out, rng);
    double r = 1.0 - van_der_corput(index);
    for (double& v : out) v *= r;
  } else {
    SeededRng rng(derive_seed(seed, kBallStream + (index - n_radial)));
    sample_ball_into(out, rng);
  }
}

struct Candidate {
  double err;
  std::size_t index;
};

}  // namespace

double van_der_corput(std::uint64_t j) {
  double v = 0.0, base = 0.5;
  while (j) {
    if (j & 1) v += base;
    base *= 0.5;
    j >>= 1;
  }
  return v;
}

double pointwise_error(const PackedNetwork& net, const RadialProfile& target,
                       std::span<const double> x) {
  return std::fabs(net.eval(x) - target(norm(x)));
}

nlohmann::json ErrorReport::to_json() const {
  return {{"sup_estimate", sup_estimate}, {"argmax_point", argmax_point},
          {"l2_estimate", l2_estimate},   {"n_samples", n_samples},
          {"n_restarts", n_restarts},     {"seed", seed},
          {"method", method}};
}

ErrorReport ErrorReport::from_json(const nlohmann::json& j) {
  ErrorReport r;
  r.sup_estimate = j.at("sup_estimate").get<double>();
  r.argmax_point = j.at("argmax_point").get<std::vector<double>>();
  r.l2_estimate = j.at("l2_estimate").get<double>();
  r.n_samples = j.at("n_samples").get<std::size_t>();
  r.n_restarts = j.at("n_restarts").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.method = j.at("method").get<std::string>();
  return r;
}

ErrorReport estimate_sup_error(const DepthTwoNetwork& net, const RadialProfile& target,
                               const VerifyBudget& budget, std::uint64_t seed, ExecPolicy policy) {
  return estimate_sup_error(PackedNetwork(net), target, budget, seed, policy);
}

ErrorReport estimate_sup_error(const PackedNetwork& net, const RadialProfile& target,
                               const VerifyBudget& budget, std::uint64_t seed, ExecPolicy policy) {
  if (budget.samples < 1000) throw std::invalid_argument("verification budget must be >= 1000 samples");
  if (budget.restarts < 0) throw std::invalid_argument("restarts must be >= 0");
  const int d = net.dim();
  const std::size_t n = budget.samples;
  const std::size_t n_radial = n / 2;
  const bool par = policy == ExecPolicy::Parallel;

  std::vector<double> pts, vals;
  std::vector<Candidate> top;  // best `restarts` samples, kept sorted descending
  const std::size_t keep = static_cast<std::size_t>(std::max(budget.restarts, 1));
  double best = -1.0;
  std::size_t best_index = 0;
  double sq_sum = 0.0;

  for (std::size_t c0 = 0; c0 < n; c0 += kChunk) {
    const std::size_t m = std::min(kChunk, n - c0);
    pts.resize(m * d);
    vals.resize(m);
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t i = 0; i < m; ++i)
      make_sample(c0 + i, n_radial, seed, std::span<double>(pts.data() + i * d, d));
    if (par) net.eval_batch(pts, vals);
    else net.eval_batch_serial(pts, vals);
#pragma omp parallel for schedule(static) if (par)
    for (std::size_t i = 0; i < m; ++i)
      vals[i] = std::fabs(vals[i] - target(norm(std::span<const double>(pts.data() + i * d, d))));
    for (std::size_t i = 0; i < m; ++i) {
      const double e = vals[i];
      if (c0 + i >= n_radial) sq_sum += e * e;
      if (e > best) {
        best = e;
        best_index = c0 + i;
      }
      if (top.size() < keep || e > top.back().err) {
        Candidate cand{e, c0 + i};
        auto it = std::upper_bound(top.begin(), top.end(), cand,
                                   [](const Candidate& a, const Candidate& b) { return a.err > b.err; });
        top.insert(it, cand);
        if (top.size() > keep) top.pop_back();
      }
    }
  }

  ErrorReport rep;
  rep.n_samples = n;
  rep.n_restarts = budget.restarts;
  rep.seed = seed;
  rep.method = "vdc-radial+uniform-ball+pattern-search";
  rep.l2_estimate = std::sqrt(sq_sum / static_cast<double>(n - n_radial));
  rep.argmax_point.resize(d);
  make_sample(best_index, n_radial, seed, rep.argmax_point);
  rep.sup_estimate = pointwise_error(net, target, rep.argmax_point);

  // pattern search from the top candidates
  std::vector<double> x(d), cand_pts(2 * d * static_cast<std::size_t>(d)), cand_vals(2 * d);
  for (int s = 0; s < budget.restarts && s < static_cast<int>(top.size()); ++s) {
    make_sample(top[s].index, n_radial, seed, x);
    double cur = pointwise_error(net, target, x);
    double step = 0.1;
    for (int level = 0; level <= 6; ++level, step *= 0.5) {
      for (int move = 0; move < 100; ++move) {
        for (int c = 0; c < 2 * d; ++c) {
          std::span<double> y(cand_pts.data() + static_cast<std::size_t>(c) * d, d);
          std::copy(x.begin(), x.end(), y.begin());
          y[c / 2] += (c % 2 ? -step : step);
          project_to_ball(y);
        }
        if (par) net.eval_batch(cand_pts, cand_vals);
        else net.eval_batch_serial(cand_pts, cand_vals);
        int arg = -1;
        double val = cur;
        for (int c = 0; c < 2 * d; ++c) {
          std::span<const double> y(cand_pts.data() + static_cast<std::size_t>(c) * d, d);
          double e = std::fabs(cand_vals[c] - target(norm(y)));
          if (e > val) {
            val = e;
            arg = c;
          }
        }
        if (arg < 0) break;
        std::copy_n(cand_pts.begin() + static_cast<std::ptrdiff_t>(arg) * d, d, x.begin());
        cur = val;
      }
    }
    if (cur > rep.sup_estimate) {
      rep.sup_estimate = cur;
      rep.argmax_point = x;
    }
  }
  return rep;
}

L2Estimate estimate_l2_error(const DepthTwoNetwork& net, const RadialProfile& target,
                             std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  PackedNetwork packed(net);
  const int d = net.dim;
  std::vector<double> pts(samples * d), vals(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    SeededRng rng(derive_seed(seed, i));
    sample_ball_into(std::span<double>(pts.data() + i * d, d), rng);
  }
  packed.eval_batch(pts, vals);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    double e = vals[i] - target(norm(std::span<const double>(pts.data() + i * d, d)));
    double q = e * e;
    s += q;
    s2 += q * q;
  }
  const double nn = static_cast<double>(samples);
  L2Estimate out;
  out.n = samples;
  out.mse = s / nn;
  double var = std::max(0.0, (s2 / nn - out.mse * out.mse) * nn / (nn - 1.0));
  out.std_error = std::sqrt(var / nn);
  return out;
}

}  // namespace radialnet
