#include "radialnet/monomial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "radialnet/specialfn.hpp"

namespace radialnet {

namespace {

BigRational abs_q(const BigRational& q) { return sgn(q) < 0 ? BigRational(-q) : q; }

const BigRational& e_lower() {
  static const BigRational v = make_rational(2718281828L, 1000000000L);
  return v;
}

std::vector<BigRational> solve_explicit(int d, int n, const BigRational& zeta) {
  // b_j = 1 / (alpha_{2n} x_j prod_{m != j} (x_j - x_m)),  x_j = zeta^j
  std::vector<BigRational> x(n);
  BigRational p = zeta;
  for (int j = 0; j < n; ++j) {
    x[j] = p;
    p *= zeta;
  }
  const BigRational an = alpha_coeff(d, n);
  std::vector<BigRational> b(n);
  for (int j = 0; j < n; ++j) {
    BigRational den = an * x[j];
    for (int m = 0; m < n; ++m)
      if (m != j) den *= x[j] - x[m];
    if (sgn(den) == 0) throw std::logic_error("singular Vandermonde system");
    b[j] = 1 / den;
  }
  return b;
}

std::vector<BigRational> solve_elimination(int d, int n, const BigRational& zeta) {
  // rows i = 1..n: alpha_{2i} zeta^{ij}, rhs e_n
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n + 1));
  for (int i = 0; i < n; ++i) {
    const BigRational a = alpha_coeff(d, i + 1);
    for (int j = 0; j < n; ++j) m[i][j] = a * pow(zeta, static_cast<unsigned long>((i + 1) * (j + 1)));
    m[i][n] = i == n - 1 ? 1 : 0;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) throw std::logic_error("singular Vandermonde system");
    std::swap(m[piv], m[c]);
    const BigRational inv = 1 / m[c][c];
    for (int j = c; j <= n; ++j) m[c][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const BigRational f = m[r][c];
      for (int j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<BigRational> b(n);
  for (int i = 0; i < n; ++i) b[i] = m[i][n];
  return b;
}

double log10_abs(const BigRational& q) {
  if (sgn(q) == 0) return -HUGE_VAL;
  // mantissa/exponent split keeps huge values finite
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log10(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log10(2.0);
}

}  // namespace

BigRational MonomialPlan::max_abs_coeff() const {
  BigRational m(0);
  for (const auto& b : coeffs)
    if (abs_q(b) > m) m = abs_q(b);
  return m;
}

BigRational MonomialPlan::sum_abs_coeff() const {
  BigRational s(0);
  for (const auto& b : coeffs) s += abs_q(b);
  return s;
}

nlohmann::json MonomialPlan::to_json() const {
  nlohmann::json sc = nlohmann::json::array(), co = nlohmann::json::array();
  for (const auto& c : scales) sc.push_back(rational_json(c));
  for (const auto& b : coeffs) co.push_back(rational_json(b));
  return {{"d", d},           {"n", n},        {"eta", rational_json(eta)},
          {"scales", sc},     {"coeffs", co},  {"b0", rational_json(b0)},
          {"epsilon_target", epsilon_target}};
}

BigRational truncate_significant(double x, int digits) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("truncation needs a positive finite value");
  BigRational exact = rational_from_double(x);
  // find e with 10^(digits-1) <= x * 10^e < 10^digits
  int e = digits - 1 - static_cast<int>(std::floor(std::log10(x)));
  auto scale = [](int p) {
    BigRational s(1);
    BigRational ten(10);
    if (p >= 0) s = pow(ten, static_cast<unsigned long>(p));
    else s = 1 / pow(ten, static_cast<unsigned long>(-p));
    return s;
  };
  BigInt lo = 1, hi = 1;
  mpz_ui_pow_ui(lo.get_mpz_t(), 10, digits - 1);
  mpz_ui_pow_ui(hi.get_mpz_t(), 10, digits);
  for (;;) {
    BigRational y = exact * scale(e);
    BigInt f = y.get_num() / y.get_den();  // floor, y > 0
    if (f >= hi) --e;
    else if (f < lo) ++e;
    else {
      BigRational out(f);
      out /= scale(e);
      return out;
    }
  }
}

BigRational plan_eta(int n, double epsilon) {
  double v = std::min({0.5, 1.0 / n, epsilon / (8.0 * std::numbers::e)});
  return truncate_significant(v, 6);
}

MonomialPlan solve_monomial_plan(int d, int n, double epsilon, PlanSolver solver) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (n < 1) throw std::invalid_argument("monomial degree n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  MonomialPlan plan;
  plan.d = d;
  plan.n = n;
  plan.epsilon_target = epsilon;
  plan.eta = plan_eta(n, epsilon);
  BigRational c = plan.eta;
  for (int k = 0; k < n; ++k) {
    plan.scales.push_back(c);
    c *= plan.eta;
  }
  const BigRational zeta = plan.eta * plan.eta;
  plan.coeffs = solver == PlanSolver::ExplicitInverse ? solve_explicit(d, n, zeta)
                                                      : solve_elimination(d, n, zeta);
  BigRational s(0);
  for (const auto& b : plan.coeffs) s += b;
  plan.b0 = -alpha_coeff(d, 0) * s;
  check_plan(plan);
  return plan;
}

void check_plan(const MonomialPlan& plan) {
  for (const auto& c : plan.scales)
    if (abs_q(c) > 1) throw std::logic_error("plan invariant: scale exceeds 1");
  BigRational s = plan.b0;
  for (const auto& b : plan.coeffs) s += alpha_coeff(plan.d, 0) * b;
  if (sgn(s) != 0) throw std::logic_error("plan invariant: constant term does not cancel");
  for (int i = 1; i <= plan.n; ++i) {
    BigRational t = plan_series_coefficient(plan, i);
    if (t != (i == plan.n ? 1 : 0))
      throw std::logic_error("plan invariant: degree matching fails at z^" + std::to_string(2 * i));
  }
}

BigRational plan_series_coefficient(const MonomialPlan& plan, int i) {
  if (i == 0) {
    BigRational s = plan.b0;
    for (const auto& b : plan.coeffs) s += b;
    return s;
  }
  BigRational s(0);
  for (int k = 0; k < plan.n; ++k)
    s += plan.coeffs[k] * pow(plan.scales[k], static_cast<unsigned long>(2 * i));
  return alpha_coeff(plan.d, i) * s;
}

BigRational plan_truncated_residual(const MonomialPlan& plan, const BigRational& z) {
  BigRational r = plan.b0;
  for (int k = 0; k < plan.n; ++k) {
    BigRational x = plan.scales[k] * z;
    BigRational x2 = x * x, p(1), f(0);
    for (int i = 0; i <= plan.n; ++i) {
      f += alpha_coeff(plan.d, i) * p;
      p *= x2;
    }
    r += plan.coeffs[k] * f;
  }
  return r - pow(z, static_cast<unsigned long>(2 * plan.n));
}

double plan_residual(const MonomialPlan& plan, std::span<const double> z_grid) {
  const BigRational sum_b = plan.sum_abs_coeff();
  const double log2_sum = sgn(sum_b) ? static_cast<double>(log2_abs(sum_b)) + 1.0 : 0.0;
  const double log_tol = std::log(1e-3 * plan.epsilon_target) - log2_sum * std::numbers::ln2;
  const unsigned bits = static_cast<unsigned>(std::max(0.0, log2_sum)) + 192;
  double worst = 0.0;
  for (double zd : z_grid) {
    if (!(zd >= 0.0 && zd <= 1.0)) throw std::invalid_argument("grid point outside [0,1]");
    mpf_class z(zd, bits), acc(plan.b0, bits);
    for (int k = 0; k < plan.n; ++k) {
      mpf_class arg(plan.scales[k], bits);
      arg *= z;
      mpf_class bk(plan.coeffs[k], bits);
      acc += bk * fd_eval_series_mp(plan.d, arg, log_tol, bits);
    }
    mpf_class target(1, bits);
    for (int i = 0; i < plan.n; ++i) target *= z * z;
    acc -= target;
    worst = std::max(worst, std::fabs(acc.get_d()));
  }
  return worst;
}

double log10_coeff_bound_stated(const MonomialPlan& plan, int j) {
  const double le = std::log10(to_double(plan.eta));
  const double jj = j, nn = plan.n;
  return std::log10(2.0 * std::numbers::e) - log10_abs(alpha_coeff(plan.d, plan.n)) +
         (jj * jj / 2.0 - jj * nn - jj / 2.0) * le;
}

double log10_coeff_bound_corrected(const MonomialPlan& plan, int j) {
  const double le = std::log10(to_double(plan.eta));
  const double jj = j, nn = plan.n;
  return std::log10(std::numbers::e) - log10_abs(alpha_coeff(plan.d, plan.n)) +
         (jj * jj - 2.0 * jj * nn - jj) * le;
}

namespace {
long tail_power(const MonomialPlan& plan, int i, bool corrected) {
  return corrected ? 2L * (i - plan.n) : 2L * i - plan.n;
}
}  // namespace

bool tail_bound_holds(const MonomialPlan& plan, int i, bool corrected) {
  const long p = tail_power(plan, i, corrected);
  BigRational bound = 4 * e_lower();
  if (p >= 0) bound *= pow(plan.eta, static_cast<unsigned long>(p));
  else bound /= pow(plan.eta, static_cast<unsigned long>(-p));
  return abs_q(plan_series_coefficient(plan, i)) <= bound;
}

double tail_bound_ratio(const MonomialPlan& plan, int i, bool corrected) {
  const long p = tail_power(plan, i, corrected);
  const double lt = log10_abs(plan_series_coefficient(plan, i));
  const double lb = std::log10(4.0 * std::numbers::e) + p * std::log10(to_double(plan.eta));
  return std::pow(10.0, lt - lb);
}

RidgeSeries monomial_ridge_series(const MonomialPlan& plan) {
  RidgeSeries out;
  const int n = plan.n;
  out.q.assign(n, BigRational(0));
  // q_m for m < n: the degree-matching equations make s_{2m} = 0 (m >= 1)
  // and b0 + sum b = 0 (m = 0)
  BigRational fact = factorial(2 * n);
  BigRational qn;
  for (int m = n;; ++m) {
    BigRational s(0);
    for (int k = 0; k < n; ++k) s += plan.coeffs[k] * pow(plan.scales[k], static_cast<unsigned long>(2 * m));
    BigRational q = s / fact;
    out.q.push_back(q);
    if (m == n) qn = abs_q(q);
    // tail after m: sum_k |b_k| c_k^{2m+2} / (2m+2)! / (1 - c_k^2), c_k <= 1/2
    BigRational next_fact = fact * (2 * m + 1) * (2 * m + 2);
    BigRational tail(0);
    for (int k = 0; k < n; ++k)
      tail += abs_q(plan.coeffs[k]) * pow(plan.scales[k], static_cast<unsigned long>(2 * m + 2));
    tail = tail * make_rational(4, 3) / next_fact;
    if (tail * BigRational(BigInt("100000000000000000000")) <= qn || m > n + 200) {
      out.tail_bound = to_double(tail);
      break;
    }
    fact = next_fact;
  }
  return out;
}

}  // namespace radialnet
