#include "radialnet/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radialnet/sphere.hpp"

namespace radialnet {
namespace {

using std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr double kWindow = 12.0;  // gaussian truncation in standard deviations

struct Quad {
  double value = 0.0;
  double error = 0.0;
};

// Piecewise Gauss-Kronrod over sorted breakpoints. When the summed error
// estimate stays far above the requested tolerance the worst piece is reported.
template <class F>
Quad integrate(const F& f, std::vector<double> pts, const QuadratureConfig& q) {
  std::sort(pts.begin(), pts.end());
  // drop slivers next to breakpoints that almost coincide
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return y - x <= 1e-12 * (1.0 + std::abs(x)); }),
            pts.end());
  Quad out;
  double l1_total = 0.0, worst = 0.0, wa = 0.0, wb = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (!(b > a)) continue;
    double err = 0.0, l1 = 0.0;
    const double v = GK::integrate(f, a, b, q.max_depth, q.tol, &err, &l1);
    if (!std::isfinite(v)) throw QuadratureError("quadrature produced a non-finite value", a, b, err);
    out.value += v;
    out.error += err;
    l1_total += l1;
    if (err > worst) {
      worst = err;
      wa = a;
      wb = b;
    }
  }
  if (out.error > std::max(1e3 * q.tol * l1_total, 1e-13)) {
    std::ostringstream os;
    os << "quadrature did not converge: error estimate " << out.error << ", worst on [" << wa << ", "
       << wb << "] (" << worst << ")";
    throw QuadratureError(os.str(), wa, wb, worst);
  }
  return out;
}

// Uniform subdivision of [a,b] into pieces of at most `step`, merged with
// the given breakpoints, sorted.
std::vector<double> pieces(double a, double b, double step, const std::vector<double>& breaks) {
  std::vector<double> p{a, b};
  const int m = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  for (int i = 1; i < m; ++i) p.push_back(a + (b - a) * i / m);
  for (double x : breaks)
    if (x > a && x < b) p.push_back(x);
  std::sort(p.begin(), p.end());
  return p;
}

double cutoff_for(double variance) {
  // exp(-v rho^2 / 2) = 1e-24 at the cutoff
  return std::sqrt(2.0 * 24.0 * std::log(10.0) / variance);
}

}  // namespace

double SmoothedProfile::base_eval(double r) const {
  if (r <= 1.0) return base(r) - shift;
  if (r <= 2.0) return (base(1.0) - shift) * (2.0 - r);
  return 0.0;
}

double SmoothedProfile::eval(double r) const {
  const double v = variance;
  const double sigma = std::sqrt(v);
  const double norm = 1.0 / std::sqrt(2.0 * pi * v);
  const double lo = r < kWindow * sigma ? 0.0 : r - kWindow * sigma;
  const double hi = std::min(2.0, r + kWindow * sigma);
  if (hi <= lo) return 0.0;
  auto k = [&](double u) { return norm * std::exp(-u * u / (2.0 * v)); };
  std::vector<double> br{1.0, r};
  if (d == 1) {
    auto f = [&](double s) { return base_eval(s) * (k(r - s) + k(r + s)); };
    return integrate(f, pieces(lo, hi, 2.0 * sigma, br), quad).value;
  }
  if (r == 0.0) {
    auto f = [&](double s) { return s * base_eval(s) * (2.0 * s / v) * k(s); };
    return integrate(f, pieces(lo, hi, 2.0 * sigma, br), quad).value;
  }
  // k(r-s) - k(r+s) = -k(r-s) expm1(-2rs/v), no cancellation at small r
  auto f = [&](double s) { return s * base_eval(s) * k(r - s) * (-std::expm1(-2.0 * r * s / v)) / r; };
  return integrate(f, pieces(lo, hi, 2.0 * sigma, br), quad).value;
}

RadialProfile SmoothedProfile::tabulated(int points) const {
  if (points < 4) throw std::invalid_argument("tabulated: need at least 4 points");
  std::vector<double> y(points);
  const double h = 1.0 / (points - 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < points; ++i) y[i] = eval(i * h);
  auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      y.begin(), y.end(), 0.0, h);
  const double c = shift;
  RadialProfile p;
  p.eval = [spline, c](double r) { return (*spline)(std::clamp(r, 0.0, 1.0)) + c; };
  p.lipschitz_bound = base.lipschitz_bound;
  p.label = "smoothed:" + base.label;
  return p;
}

bool SmoothedProfile::is_zero() const {
  for (int i = 0; i <= 1000; ++i)
    if (base_eval(i / 1000.0) != 0.0) return false;
  return true;
}

SmoothedProfile mollify(const RadialProfile& profile, int d, double epsilon, QuadratureConfig quad) {
  if (d != 1 && d != 3)
    throw std::invalid_argument(
        "mollify: d must be 1 or 3 (odd d has elementary sine/cosine radial kernels; even d "
        "needs the Bessel J0 kernel, not implemented)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("mollify: epsilon must be positive");
  SmoothedProfile g;
  g.base = profile;
  g.d = d;
  g.epsilon = epsilon;
  g.variance = epsilon * epsilon / (4.0 * d);
  g.shift = profile(0.0);
  g.quad = quad;
  return g;
}

double radial_transform(int d, double rho, const std::function<double(double)>& h, double support,
                        const std::vector<double>& breaks, const QuadratureConfig& quad) {
  const double step = rho > 1.0 ? pi / rho : pi;
  const auto pts = pieces(0.0, support, step, breaks);
  if (d == 1) {
    auto f = [&](double r) { return h(r) * std::cos(rho * r); };
    return integrate(f, pts, quad).value / pi;
  }
  if (d == 3) {
    if (rho < 1e-9) {
      auto f = [&](double r) { return r * r * h(r); };
      return integrate(f, pts, quad).value / (2.0 * pi * pi);
    }
    auto f = [&](double r) { return r * h(r) * std::sin(rho * r); };
    return integrate(f, pts, quad).value / (2.0 * pi * pi * rho);
  }
  throw std::invalid_argument("radial_transform: d must be 1 or 3");
}

double fourier_value(const SmoothedProfile& g, double rho, FourierPath path) {
  if (path == FourierPath::Direct) {
    // the outer rule cannot resolve below the accuracy of the inner one
    const double support = 2.0 + kWindow * std::sqrt(g.variance);
    QuadratureConfig outer = g.quad;
    outer.tol = std::max(g.quad.tol * 1e3, 1e-9);
    outer.max_depth = std::min(g.quad.max_depth, 12);
    return radial_transform(g.d, rho, [&](double r) { return g.eval(r); }, support, {1.0, 2.0},
                            outer);
  }
  const double fh =
      radial_transform(g.d, rho, [&](double r) { return g.base_eval(r); }, 2.0, {1.0}, g.quad);
  return fh * std::exp(-g.variance * rho * rho / 2.0);
}

std::vector<double> radial_fourier(const SmoothedProfile& g, const std::vector<double>& rho,
                                   FourierPath path) {
  std::vector<double> out(rho.size());
  const long n = static_cast<long>(rho.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = std::abs(fourier_value(g, rho[i], path));
  return out;
}

double sphere_l1_moment(int d) { return 1.0 + 2.0 * (d - 1) / pi; }

double sphere_l1_moment_mc(int d, std::size_t samples, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<double> u(d);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    sample_unit_sphere_into(u, rng);
    double l1 = 0.0;
    for (double x : u) l1 += std::abs(x);
    acc += l1 * l1;
  }
  return acc / static_cast<double>(samples);
}

double sphere_area(int d) { return 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0); }

double v_moment_bound(int d, double epsilon) {
  const double ball = std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  const double abs_moment = std::pow(2.0, (d + 1) / 2.0) * std::tgamma(d / 2.0 + 1.0) / std::sqrt(pi) *
                            std::pow(2.0 * std::sqrt(static_cast<double>(d)) / epsilon, d + 1);
  return 0.5 * std::sqrt(static_cast<double>(d)) * ball * sphere_area(d) * abs_moment;
}

nlohmann::json FourierReport::to_json() const {
  return {{"d", d},
          {"epsilon", epsilon},
          {"variance", variance},
          {"v_moment", v_moment},
          {"quad_error", quad_error},
          {"radial_integral", radial_integral},
          {"cutoff", cutoff},
          {"tail_ratio", tail_ratio},
          {"sphere_factor", sphere_factor},
          {"sphere_factor_mc", sphere_factor_mc},
          {"mc_samples", mc_samples},
          {"v_bound", v_bound}};
}

FourierReport v_moment(const SmoothedProfile& g, const MomentOptions& opt) {
  FourierReport rep;
  rep.d = g.d;
  rep.epsilon = g.epsilon;
  rep.variance = g.variance;
  rep.sphere_factor = sphere_l1_moment(g.d);
  rep.sphere_factor_mc = g.d == 1 ? 1.0 : sphere_l1_moment_mc(g.d, opt.mc_samples, opt.mc_seed);
  rep.mc_samples = g.d == 1 ? 0 : opt.mc_samples;
  rep.v_bound = v_moment_bound(g.d, g.epsilon);
  rep.cutoff = cutoff_for(g.variance);
  if (g.is_zero()) return rep;

  const int dp1 = g.d + 1;
  auto integrand = [&](double rho) {
    return std::pow(rho, dp1) * std::abs(fourier_value(g, rho, FourierPath::Decay));
  };

  // divergence guard on a scan of the integrand
  const int scan = 2048;
  std::vector<double> vals(scan + 1);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i <= scan; ++i) vals[i] = integrand(rep.cutoff * i / scan);
  const double peak = *std::max_element(vals.begin(), vals.end());
  double tail = 0.0;
  for (int i = scan - scan / 50; i <= scan; ++i) tail = std::max(tail, vals[i]);
  rep.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
  if (rep.tail_ratio > opt.tail_decay) {
    std::ostringstream os;
    os << "v_moment: integrand near the cutoff " << rep.cutoff << " is " << rep.tail_ratio
       << " of its peak (limit " << opt.tail_decay << ")";
    throw Error(os.str());
  }

  // |g^| has kinks at its zeros; pieces of length 1/2 keep them local
  const auto pts = pieces(0.0, rep.cutoff, 0.5, {});
  const long m = static_cast<long>(pts.size()) - 1;
  std::vector<Quad> parts(m);
  QuadratureConfig outer = g.quad;
  outer.tol = std::max(g.quad.tol * 1e4, 1e-8);
  outer.max_depth = std::min(g.quad.max_depth, 10);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < m; ++i) parts[i] = integrate(integrand, {pts[i], pts[i + 1]}, outer);
  double total = 0.0, err = 0.0;
  for (const auto& p : parts) {
    total += p.value;
    err += p.error;
  }
  rep.radial_integral = total;
  const double scale = rep.sphere_factor * (g.d == 1 ? 2.0 : sphere_area(g.d));
  rep.v_moment = scale * total;
  rep.quad_error = scale * err;
  return rep;
}

RadialSampler::RadialSampler(const SmoothedProfile& g, double cutoff, int table_points,
                             double min_efficiency)
    : cutoff_(cutoff), h_(cutoff / table_points) {
  if (table_points < 2) throw std::invalid_argument("RadialSampler: table too small");
  std::vector<double> rho(table_points + 1);
  for (int i = 0; i <= table_points; ++i) rho[i] = i * h_;
  table_ = radial_fourier(g, rho, FourierPath::Decay);
  for (int i = 0; i <= table_points; ++i) table_[i] *= std::pow(rho[i], g.d + 1);
  cum_.assign(table_points + 1, 0.0);
  for (int i = 1; i <= table_points; ++i) cum_[i] = cum_[i - 1] + 0.5 * h_ * (table_[i - 1] + table_[i]);
  const double mass = cum_.back();
  if (!(mass > 0.0)) throw Error("RadialSampler: density has zero mass");
  const double peak = *std::max_element(table_.begin(), table_.end());
  efficiency_ = mass / (peak * cutoff_);
  bins_ = 1;
  bin_max_ = {peak};
  if (efficiency_ < min_efficiency) {
    // per-bin maxima of the nodes bound the linear interpolant exactly
    widened_ = true;
    bins_ = std::min(256, table_points);
    bin_max_.assign(bins_, 0.0);
    double env = 0.0;
    for (int b = 0; b < bins_; ++b) {
      const int i0 = b * table_points / bins_, i1 = (b + 1) * table_points / bins_;
      for (int i = i0; i <= i1; ++i) bin_max_[b] = std::max(bin_max_[b], table_[i]);
      env += bin_max_[b] * (i1 - i0) * h_;
    }
    efficiency_ = mass / env;
    if (efficiency_ < min_efficiency) {
      std::ostringstream os;
      os << "RadialSampler: acceptance " << efficiency_ << " below " << min_efficiency
         << " even with the per-bin envelope";
      throw Error(os.str());
    }
  }
}

double RadialSampler::density(double rho) const {
  if (rho <= 0.0 || rho >= cutoff_) return rho <= 0.0 ? table_.front() : table_.back();
  const double u = rho / h_;
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * table_[i] + w * table_[i + 1];
}

double RadialSampler::cdf(double rho) const {
  if (rho <= 0.0) return 0.0;
  if (rho >= cutoff_) return 1.0;
  const double u = rho / h_;
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  const double pr = (1.0 - w) * table_[i] + w * table_[i + 1];
  return (cum_[i] + 0.5 * w * h_ * (table_[i] + pr)) / cum_.back();
}

double RadialSampler::draw(SeededRng& rng) {
  const int nodes = static_cast<int>(table_.size()) - 1;
  if (bins_ == 1) {
    for (;;) {
      const double rho = rng.uniform() * cutoff_;
      if (rng.uniform() * bin_max_[0] < density(rho)) return rho;
    }
  }
  std::vector<double> weights(bins_);
  double total = 0.0;
  for (int b = 0; b < bins_; ++b) {
    const int i0 = b * nodes / bins_, i1 = (b + 1) * nodes / bins_;
    total += bin_max_[b] * (i1 - i0);
    weights[b] = total;
  }
  for (;;) {
    const double pick = rng.uniform() * total;
    const int b = static_cast<int>(std::upper_bound(weights.begin(), weights.end(), pick) - weights.begin());
    const int bb = std::min(b, bins_ - 1);
    const int i0 = bb * nodes / bins_, i1 = (bb + 1) * nodes / bins_;
    const double rho = (i0 + rng.uniform() * (i1 - i0)) * h_;
    if (rng.uniform() * bin_max_[bb] < density(rho)) return rho;
  }
}

std::vector<RidgeFeature> sample_ridge_features(const SmoothedProfile& g, RadialSampler& sampler,
                                                std::size_t n, SeededRng& rng,
                                                std::vector<double>* rhos) {
  std::vector<RidgeFeature> out;
  out.reserve(n);
  std::vector<double> u(g.d);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = sampler.draw(rng);
    if (rhos) rhos->push_back(rho);
    double l1 = 0.0;
    if (g.d == 1) {
      u[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      l1 = 1.0;
    } else {
      // direction density proportional to |u|_1^2, at most d on the sphere
      for (;;) {
        sample_unit_sphere_into(u, rng);
        l1 = 0.0;
        for (double x : u) l1 += std::abs(x);
        if (rng.uniform() * g.d < l1 * l1) break;
      }
    }
    const double w1 = rho * l1;
    // threshold density proportional to |cos(|w|_1 t)| on [-1,1]
    double t = 0.0;
    for (;;) {
      t = 2.0 * rng.uniform() - 1.0;
      if (rng.uniform() < std::abs(std::cos(w1 * t))) break;
    }
    RidgeFeature f;
    f.a.resize(g.d);
    for (int i = 0; i < g.d; ++i) f.a[i] = u[i] / l1;
    f.t = t;
    f.sign = t >= 0.0 ? 1.0 : -1.0;
    out.push_back(std::move(f));
  }
  return out;
}

double mollification_gap(const SmoothedProfile& g, int points) {
  std::vector<double> gap(points);
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < points; ++i) {
    const double r = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    gap[i] = std::abs(g.eval(r) - g.base_eval(r));
  }
  return *std::max_element(gap.begin(), gap.end());
}

namespace {

struct FourierContext {
  SmoothedProfile g;
  RadialProfile target;
  RadialProfile smooth;  // g + phi(0)
  FourierReport fourier;
  std::unique_ptr<RadialSampler> sampler;
  double gap = 0.0;
  bool zero = false;
};

FourierContext make_context(const RadialProfile& profile, int d, double epsilon,
                            const FourierOptions& opt) {
  FourierContext c;
  c.g = mollify(profile, d, epsilon);
  c.target = profile;
  c.zero = c.g.is_zero();
  c.fourier = v_moment(c.g);
  if (c.zero) return c;
  c.smooth = c.g.tabulated(opt.table_points);
  c.sampler = std::make_unique<RadialSampler>(c.g, c.fourier.cutoff);
  c.gap = mollification_gap(c.g, 50);
  return c;
}

FourierBuild build_in(FourierContext& c, std::size_t n, SeededRng& rng, const FourierOptions& opt) {
  const int d = c.g.d;
  FourierBuild out;
  out.fourier = c.fourier;
  out.mollify_gap = c.gap;
  DepthTwoNetwork& net = out.network;
  net.dim = d;
  net.activation = Activation::ReLU;
  const std::uint64_t draw_seed = rng.next_u64();
  const std::uint64_t verify_seed = derive_seed(draw_seed, 0x7665726966);
  net.meta = {{"target", "fourier"}, {"profile", c.target.label}, {"d", d},
              {"epsilon", c.g.epsilon}, {"n", n}, {"seed", draw_seed}};

  if (c.zero) {
    net.output_bias = c.g.shift;
    out.report = estimate_sup_error(net, c.target, opt.budget, verify_seed);
    out.fit_error = out.report.sup_estimate;
    out.passed = out.report.sup_estimate <= c.g.epsilon;
    return out;
  }

  SeededRng draw(draw_seed);
  const auto features = sample_ridge_features(c.g, *c.sampler, n, draw);
  out.sampler_efficiency = c.sampler->efficiency();
  for (const auto& f : features) {
    std::vector<double> w(d);
    for (int i = 0; i < d; ++i) w[i] = f.sign * f.a[i];
    net.add_unit(std::move(w), -f.sign * f.t, 0.0);
  }
  // the linear part x_1 = relu(x_1) - relu(-x_1)
  for (double s : {1.0, -1.0}) {
    std::vector<double> w(d, 0.0);
    w[0] = s;
    net.add_unit(std::move(w), 0.0, 0.0);
  }

  const std::size_t cols = net.width() + 1;
  const std::size_t rows =
      std::max(cols, std::min(opt.fit_max_rows, std::max(opt.fit_min_rows, opt.fit_rows_per_col * cols)));
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd y(rows);
  SeededRng fit_rng = draw.derive(1);
  std::vector<double> x(d);
  for (std::size_t r = 0; r < rows; ++r) {
    sample_ball_into(x, fit_rng);
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    y(r) = c.smooth(std::sqrt(norm2));
    A(r, 0) = 1.0;
    for (std::size_t k = 0; k + 1 < cols; ++k) {
      const auto& u = net.hidden[k];
      double z = u.bias;
      for (int i = 0; i < d; ++i) z += u.weight[i] * x[i];
      A(r, k + 1) = z > 0.0 ? z : 0.0;
    }
  }
  if (opt.fit_ridge > 0.0) {
    // Tikhonov rows on the unit weights; units active only on a thin cap of
    // the ball see few samples and would otherwise take wild weights
    const double s = std::sqrt(opt.fit_ridge * static_cast<double>(rows));
    A.conservativeResize(rows + cols - 1, Eigen::NoChange);
    y.conservativeResize(rows + cols - 1);
    A.bottomRows(cols - 1).setZero();
    y.tail(cols - 1).setZero();
    for (std::size_t k = 0; k + 1 < cols; ++k) A(rows + k, k + 1) = s;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  const Eigen::VectorXd coef = cod.solve(y);
  net.output_bias = coef(0);
  for (std::size_t k = 0; k + 1 < cols; ++k) net.output_weights[k] = coef(k + 1);
  net.validate();

  const PackedNetwork packed(net);
  out.report = estimate_sup_error(packed, c.target, opt.budget, verify_seed);
  out.fit_error = estimate_sup_error(packed, c.smooth, opt.budget, verify_seed).sup_estimate;
  out.passed = out.report.sup_estimate <= c.g.epsilon;
  return out;
}

}  // namespace

FourierBuild build_fourier_network(const RadialProfile& profile, int d, double epsilon, std::size_t n,
                                   SeededRng& rng, const FourierOptions& opt) {
  auto c = make_context(profile, d, epsilon, opt);
  return build_in(c, n, rng, opt);
}

FourierBuild grow_fourier_network(const RadialProfile& profile, int d, double epsilon, SeededRng& rng,
                                  const FourierGrowth& growth, const FourierOptions& opt) {
  auto c = make_context(profile, d, epsilon, opt);
  FourierBuild best;
  bool have = false;
  for (std::size_t n = growth.n_start; n <= growth.n_max; n *= 2) {
    auto b = build_in(c, c.zero ? 0 : n, rng, opt);
    if (b.passed) return b;
    if (!have || b.report.sup_estimate < best.report.sup_estimate) {
      best = std::move(b);
      have = true;
    }
    if (c.zero) break;
  }
  return best;
}

}  // namespace radialnet
