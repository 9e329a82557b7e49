#include "radialnet/bernstein.hpp"

#include <cmath>
#include <stdexcept>

namespace radialnet {

namespace {

BigRational abs_q(const BigRational& q) { return sgn(q) < 0 ? BigRational(-q) : q; }

double de_casteljau(std::vector<double> b, double z) {
  const double u = 1.0 - z;
  for (std::size_t r = b.size(); r-- > 1;)
    for (std::size_t i = 0; i < r; ++i) b[i] = u * b[i] + z * b[i + 1];
  return b.empty() ? 0.0 : b[0];
}

std::vector<double> shifted_samples(const RadialProfile& phi, int n) {
  const double mid = phi(0.5);
  std::vector<double> c(n + 1);
  for (int nu = 0; nu <= n; ++nu) c[nu] = phi(std::fabs(2.0 * nu / n - 1.0)) - mid;
  return c;
}

double grid_error_bernstein(const std::vector<double>& c, const RadialProfile& phi, double shift,
                            int points) {
  double err = 0.0;
  for (int i = 0; i < points; ++i) {
    double z = static_cast<double>(i) / (points - 1);
    double v = de_casteljau(c, 0.5 * (1.0 + z)) + shift;
    err = std::max(err, std::fabs(v - phi(z)));
  }
  return err;
}

}  // namespace

double BernsteinPoly::eval(double z) const { return de_casteljau(coeffs, z); }

BernsteinPoly bernstein_operator(const std::function<double(double)>& g, int n) {
  if (n < 1) throw std::invalid_argument("Bernstein degree must be >= 1");
  BernsteinPoly p;
  p.coeffs.resize(n + 1);
  for (int nu = 0; nu <= n; ++nu) p.coeffs[nu] = g(static_cast<double>(nu) / n);
  return p;
}

double EvenPolynomial::eval(double t) const {
  const double t2 = t * t;
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * t2 + to_double(coeffs[k]);
  return s + to_double(shift);
}

double EvenPolynomial::eval_bernstein(double t) const {
  std::vector<double> c;
  c.reserve(bernstein_coeffs.size());
  for (const auto& q : bernstein_coeffs) c.push_back(to_double(q));
  return de_casteljau(std::move(c), 0.5 * (1.0 + t)) + to_double(shift);
}

BigRational EvenPolynomial::eval_exact(const BigRational& t) const {
  const BigRational t2 = t * t;
  BigRational s(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * t2 + coeffs[k];
  return s + shift;
}

BigRational EvenPolynomial::abs_coeff_sum() const {
  BigRational s(0);
  for (const auto& c : coeffs) s += abs_q(c);
  return s;
}

nlohmann::json EvenPolynomial::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : coeffs) cs.push_back(rational_json(c));
  return {{"degree", degree}, {"coeffs", cs}, {"shift", rational_json(shift)},
          {"grid_error", grid_error}, {"warnings", warnings}};
}

int even_poly_degree(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  return 2 * static_cast<int>(std::ceil(4.0 / (epsilon * epsilon * epsilon) - 1e-9));
}

int smallest_passing_degree(const RadialProfile& phi, double target_error, int max_degree,
                            int grid_points) {
  const double mid = phi(0.5);
  for (int n = 2; n <= max_degree; n += 2)
    if (grid_error_bernstein(shifted_samples(phi, n), phi, mid, grid_points) <= target_error) return n;
  throw std::runtime_error("no even Bernstein degree up to " + std::to_string(max_degree) +
                           " reaches grid error " + std::to_string(target_error));
}

EvenPolynomial even_poly_approx(const RadialProfile& phi, double epsilon, const EvenPolyOptions& opts) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const int n = opts.degree_override ? *opts.degree_override : even_poly_degree(epsilon);
  if (n < 2 || n % 2) throw std::invalid_argument("Bernstein degree must be even and >= 2");

  EvenPolynomial p;
  p.degree = n;
  p.warnings = lipschitz_spot_check(phi);
  if (phi.lipschitz_bound > 1.0)
    p.warnings.push_back("profile " + phi.label + " declares Lipschitz bound " +
                         std::to_string(phi.lipschitz_bound) + " > 1");
  p.shift = quantize(phi(0.5), opts.sample_bits);

  // g_nu = Q(phi(|2 nu/n - 1|)) - Q(phi(1/2)), symmetric in nu <-> n - nu
  std::vector<BigRational> g(n + 1);
  for (int nu = 0; nu <= n; ++nu) {
    const int m = std::abs(2 * nu - n);  // |2nu/n - 1| = m/n, exact in double for small n
    g[nu] = quantize(phi(static_cast<double>(m) / n), opts.sample_bits) - p.shift;
  }
  p.bernstein_coeffs = g;

  // power-basis coefficients in z: a_j = C(n,j) Delta^j g_0
  std::vector<BigRational> diff = g, a(n + 1);
  BigInt binom = 1;
  for (int j = 0; j <= n; ++j) {
    a[j] = BigRational(binom) * diff[0];
    for (int i = 0; i + 1 < static_cast<int>(diff.size()); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    binom = binom * (n - j) / (j + 1);
  }
  // z = (1 + t)/2: coefficient of t^m is sum_{j>=m} a_j C(j,m) / 2^j
  std::vector<BigRational> c(n + 1, BigRational(0));
  for (int j = 0; j <= n; ++j) {
    BigRational aj = a[j];
    mpq_div_2exp(aj.get_mpq_t(), aj.get_mpq_t(), j);
    BigInt bm = 1;  // C(j, m)
    for (int m = 0; m <= j; ++m) {
      c[m] += aj * BigRational(bm);
      bm = bm * (j - m) / (m + 1);
    }
  }
  // (p(t) + p(-t))/2 keeps the even part; odd coefficients vanish identically
  BigInt bound = 1;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  for (int m = 0; m <= n; m += 2) {
    if (abs_q(c[m]) > BigRational(bound))
      throw std::logic_error("even polynomial coefficient p_" + std::to_string(m) + " exceeds 2^n");
    p.coeffs.push_back(c[m]);
  }
  for (int m = 1; m <= n; m += 2)
    if (sgn(c[m]) != 0) throw std::logic_error("odd coefficient t^" + std::to_string(m) + " does not vanish");

  std::vector<double> gd;
  for (const auto& q : g) gd.push_back(to_double(q));
  p.grid_error = grid_error_bernstein(gd, phi, to_double(p.shift), opts.grid_points);
  return p;
}

}  // namespace radialnet
