#include "radialnet/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace radialnet {

namespace {

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
}

void check_args(int d, double z, double tol) {
  check_dim(d);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(z >= 0.0 && z <= 1.0)) throw std::invalid_argument("z must lie in [0,1]");
}

}  // namespace

BigInt double_factorial(unsigned k) {
  BigInt r;
  mpz_2fac_ui(r.get_mpz_t(), k);
  return r;
}

BigRational alpha_coeff(int d, int k) {
  check_dim(d);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  BigRational q(double_factorial(d - 2), double_factorial(2 * k) * double_factorial(d + 2 * k - 2));
  q.canonicalize();
  return q;
}

FdCoefficients FdCoefficients::compute(int d, int order) {
  check_dim(d);
  FdCoefficients c;
  c.d = d;
  c.truncation_order = order;
  c.coeffs.reserve(order + 1);
  BigRational a(1);
  for (int k = 0; k <= order; ++k) {
    c.coeffs.push_back(a);
    // alpha_{2k+2} = alpha_{2k} / ((2k+2)(d+2k))
    a /= BigRational((2 * k + 2) * static_cast<long>(d + 2 * k));
  }
  return c;
}

int fd_series_order(double z, double log_tol) {
  // alpha_{2j} <= 1/(2j)!! = (z^2/2)^j / j! at z; tail after K is bounded by
  // m_{K+1} / (1 - q) with q = (z^2/2)/(K+2) the next term ratio
  const double u = 0.5 * z * z;
  if (u == 0.0) return 0;
  const double lu = std::log(u);
  double lm = 0.0;  // log m_K
  for (int K = 0; K < 100000; ++K) {
    double lnext = lm + lu - std::log(K + 1.0);
    double q = u / (K + 2);
    if (q < 1.0 && lnext - std::log1p(-q) < log_tol) return K;
    lm = lnext;
  }
  throw std::runtime_error("F_d series did not reach tolerance");
}

double fd_eval_series(int d, double z, double tol) {
  check_args(d, z, tol);
  const int K = fd_series_order(z, std::log(tol));
  const double z2 = z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < K; ++k) {
    term *= z2 / ((2.0 * k + 2.0) * (d + 2.0 * k));
    sum += term;
  }
  return sum;
}

mpf_class fd_eval_series_mp(int d, const mpf_class& z, double log_tol, unsigned bits) {
  check_dim(d);
  double zd = std::fabs(z.get_d());
  if (zd > 1.0 + 1e-12) throw std::invalid_argument("z must lie in [0,1]");
  const int K = fd_series_order(std::min(zd, 1.0), log_tol);
  mpf_class z2(z * z, bits), term(1, bits), sum(1, bits);
  for (int k = 0; k < K; ++k) {
    term *= z2;
    term /= static_cast<unsigned long>((2 * k + 2) * (d + 2 * k));
    sum += term;
  }
  return sum;
}

double fd_eval_closed(int d, double z, double tol) {
  check_args(d, z, tol);
  const double x = 2.0 * z;
  const double ez = std::exp(-z);
  // r_k <= 1, so the tail after K is bounded by exp(-z) q_{K+1}/(1 - x/(K+2)),
  // q_k = x^k / k!
  double q = 1.0, r = 1.0, sum = 1.0;
  const double h = 0.5 * (d - 1);
  for (int k = 0; k < 10000; ++k) {
    double qn = q * x / (k + 1);
    double ratio = x / (k + 2);
    if (ratio < 1.0 && ez * qn / (1.0 - ratio) < tol) return ez * sum;
    r *= (h + k) / (d - 1.0 + k);
    q = qn;
    sum += r * q;
  }
  throw std::runtime_error("F_d closed-form series did not reach tolerance");
}

BigRational a_n_sum(int d, int n) {
  check_dim(d);
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  BigRational sum(0);
  BigRational half_poch(1);  // ((d-1)/2)_k
  BigInt poch(1);            // (d-1)_k
  BigInt two_k(1);
  for (int k = 0; k <= n; ++k) {
    BigRational t = half_poch * two_k;
    t /= BigRational(factorial(n - k) * factorial(k) * poch);
    if (k % 2) sum -= t;
    else sum += t;
    half_poch *= make_rational(d - 1 + 2 * k, 2);
    poch *= (d - 1 + k);
    two_k *= 2;
  }
  sum.canonicalize();
  return sum;
}

BigRational a_n_closed(int d, int n) {
  check_dim(d);
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (n % 2) return BigRational(0);
  BigRational q(double_factorial(d - 2), double_factorial(n) * double_factorial(d + n - 2));
  q.canonicalize();
  return q;
}

}  // namespace radialnet
