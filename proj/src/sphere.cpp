#include "radialnet/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace radialnet {

std::vector<double> sample_unit_sphere(int d, SeededRng& rng) {
  if (d < 2) throw std::invalid_argument("sphere dimension must be >= 2, got " + std::to_string(d));
  std::vector<double> w(d);
  sample_unit_sphere_into(w, rng);
  return w;
}

void sample_unit_sphere_into(std::span<double> out, SeededRng& rng) {
  if (out.empty()) throw std::invalid_argument("empty output vector");
  for (;;) {
    double s = 0.0;
    for (double& v : out) {
      v = rng.normal();
      s += v * v;
    }
    if (s > 1e-300) {
      double inv = 1.0 / std::sqrt(s);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

void sample_ball_into(std::span<double> out, SeededRng& rng) {
  sample_unit_sphere_into(out, rng);
  double r = std::pow(rng.uniform(), 1.0 / static_cast<double>(out.size()));
  for (double& v : out) v *= r;
}

namespace {

double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-16;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double dd = 1.0 - qab * x / qap;
  if (std::fabs(dd) < tiny) dd = tiny;
  dd = 1.0 / dd;
  double h = dd;
  for (int m = 1; m <= 20000; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    dd = 1.0 + aa * dd;
    if (std::fabs(dd) < tiny) dd = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    h *= dd * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    dd = 1.0 + aa * dd;
    if (std::fabs(dd) < tiny) dd = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    dd = 1.0 / dd;
    double del = dd * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
               b * std::log1p(-x);
  double bt = std::exp(lbt);
  double v;
  if (x < (a + 1.0) / (a + b + 2.0))
    v = bt * beta_cf(a, b, x) / a;
  else
    v = 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
  return std::clamp(v, 0.0, 1.0);
}

double beta_inverse_cdf(double a, double b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(a, b, mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    dmax = std::max({dmax, (i + 1) / n - f, f - i / n});
  }
  return dmax;
}

double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double beta_law_check(int d, std::span<const double> x, std::size_t n_samples, SeededRng& rng) {
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("x has wrong dimension");
  if (n_samples < 100) throw std::invalid_argument("need at least 100 samples");
  double r = 0.0;
  for (double v : x) r += v * v;
  r = std::sqrt(r);
  if (!(r > 0.0)) throw std::invalid_argument("x must be nonzero");
  std::vector<double> w(d), xs;
  xs.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    sample_unit_sphere_into(w, rng);
    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += w[i] * x[i];
    xs.push_back(std::clamp(dot / (2.0 * r) + 0.5, 0.0, 1.0));
  }
  const double a = 0.5 * (d - 1);
  return ks_statistic(xs, [a](double t) { return regularized_incomplete_beta(a, a, t); });
}

Eigen::MatrixXd random_orthogonal(int d, SeededRng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace radialnet
