#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "radialnet/activation.hpp"
#include "radialnet/expfeat.hpp"
#include "radialnet/monomial.hpp"
#include "radialnet/profile.hpp"
#include "radialnet/ridge.hpp"
#include "radialnet/specialfn.hpp"

namespace radialnet {

namespace {

constexpr double kLn10 = std::numbers::ln10;

mpf_class mpf_e(unsigned bits) {
  mpf_class s(1, bits), t(1, bits), eps(1, bits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), bits + 8);
  for (unsigned long k = 1; t > eps; ++k) {
    t /= k;
    s += t;
  }
  return s;
}

BigInt mpf_ceil(const mpf_class& x) {
  mpf_class c(0, x.get_prec());
  mpf_ceil(c.get_mpf_t(), x.get_mpf_t());
  BigInt r;
  mpz_set_f(r.get_mpz_t(), c.get_mpf_t());
  return r;
}

double ln_abs(const BigRational& q) { return log2_abs(q) * std::numbers::ln2; }

double ln_abs_precise(const BigRational& q) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::numbers::ln2;
}

// ln(m!!)
double ln_double_factorial(long m) {
  if (m <= 1) return 0.0;
  if (m % 2 == 0) return (m / 2) * std::numbers::ln2 + std::lgamma(m / 2 + 1.0);
  return std::lgamma(m + 1.0) - ((m - 1) / 2) * std::numbers::ln2 - std::lgamma((m + 1) / 2.0);
}

double ln_inv_alpha(int d, long k) {
  return ln_double_factorial(2 * k) + ln_double_factorial(d + 2 * k - 2) - ln_double_factorial(d - 2);
}

}  // namespace

WidthEstimate monomial_width(const WidthInputs& in, Activation act) {
  const int k = in.k;
  // ln delta = ln acc - ln 2k - ln max|b|
  const double ld = in.ln_acc - std::log(2.0 * k) - in.ln_max_b;
  WidthEstimate w;
  if (-2.0 * ld < 600.0) {
    const double delta = std::exp(ld);
    double units = std::ceil(144.0 / (delta * delta) - 1e-9);
    double per = act == Activation::Exp ? std::ceil(36.0 / (delta * delta) - 1e-9)
                                        : units * (std::ceil(4.0 * std::numbers::e / delta) + 1.0);
    w.ln_width = std::log(static_cast<double>(k)) + std::log(per);
  } else {
    double lper = act == Activation::Exp
                      ? std::log(36.0) - 2.0 * ld
                      : std::log(144.0) - 2.0 * ld + std::log(4.0 * std::numbers::e) - ld;
    w.ln_width = std::log(static_cast<double>(k)) + lper;
  }
  w.log10_width = w.ln_width / kLn10;
  if (in.acc && in.max_b && w.log10_width < WidthEstimate::kExactDigitCap) {
    const unsigned bits = static_cast<unsigned>(w.ln_width / std::numbers::ln2) + 192;
    const BigRational inv_delta = BigRational(2 * k) * *in.max_b / *in.acc;  // 1/delta
    BigInt per;
    if (act == Activation::Exp) {
      BigRational x = 36 * inv_delta * inv_delta;
      mpz_cdiv_q(per.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    } else {
      BigRational x = 144 * inv_delta * inv_delta;
      BigInt units;
      mpz_cdiv_q(units.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      mpf_class y(inv_delta, bits);
      y *= 4 * mpf_e(bits);
      per = units * (mpf_ceil(y) + 1);
    }
    w.exact = BigInt(k) * per;
  }
  return w;
}

namespace {

// eps/(8e) below every other candidate: 6-digit mantissa and decimal exponent
std::pair<long, double> tiny_eta_digits(double ln_epsilon) {
  const double l10 = (ln_epsilon - std::log(8.0) - 1.0) / kLn10;
  const double ex = std::floor(l10);
  double mant = std::pow(10.0, l10 - ex);  // [1, 10)
  return {static_cast<long>(std::floor(mant * 1e5 * (1.0 - 1e-12))), ex};
}

// ln of plan_eta_log without building the rational
double plan_eta_ln(int n, double ln_epsilon) {
  if (ln_epsilon > -700.0) return ln_abs_precise(plan_eta(n, std::exp(ln_epsilon)));
  const auto [digits, ex] = tiny_eta_digits(ln_epsilon);
  return std::log(digits / 1e5) + ex * kLn10;
}

}  // namespace

BigRational plan_eta_log(int n, double ln_epsilon) {
  if (ln_epsilon > -700.0) return plan_eta(n, std::exp(ln_epsilon));
  const auto [digits, ex] = tiny_eta_digits(ln_epsilon);
  BigRational q = make_rational(digits, 100000);
  BigRational ten(10);
  if (ex >= 0) q *= pow(ten, static_cast<unsigned long>(ex));
  else q /= pow(ten, static_cast<unsigned long>(-ex));
  return q;
}

WidthEstimate monomial_width_bound(int d, int k, double ln_acc, const std::optional<BigRational>& acc,
                                   Activation act) {
  const double kk = static_cast<double>(k);
  WidthInputs in;
  in.k = k;
  in.ln_acc = ln_acc;
  in.ln_max_b = 1.0 + ln_inv_alpha(d, k) - (kk * kk + kk) * plan_eta_ln(k, ln_acc - std::numbers::ln2);
  in.acc = acc;
  if (acc && 3.0 * in.ln_max_b / kLn10 < WidthEstimate::kExactDigitCap) {
    // e / alpha_{2k} eta^{-(k^2+k)}, e rounded up at 30 digits
    const BigRational eta = plan_eta_log(k, ln_acc - std::numbers::ln2);
    BigRational e_hi = parse_rational("2718281828459045235360287471353/1000000000000000000000000000000");
    in.max_b = e_hi / alpha_coeff(d, k) / pow(eta, static_cast<unsigned long>(k) * (k + 1));
  }
  return monomial_width(in, act);
}

WidthEstimate monomial_theoretical_width(int d, int k, double epsilon, Activation act) {
  MonomialPlan plan = solve_monomial_plan(d, k, epsilon / 2.0);
  WidthInputs in;
  in.k = k;
  in.ln_acc = std::log(epsilon);
  in.acc = rational_from_double(epsilon);
  in.max_b = plan.max_abs_coeff();
  in.ln_max_b = ln_abs_precise(*in.max_b);
  return monomial_width(in, act);
}

WidthEstimate sum_widths(const std::vector<WidthEstimate>& parts) {
  WidthEstimate w;
  if (parts.empty()) {
    w.ln_width = -HUGE_VAL;
    w.log10_width = -HUGE_VAL;
    w.exact = BigInt(0);
    return w;
  }
  double m = -HUGE_VAL;
  for (const auto& p : parts) m = std::max(m, p.ln_width);
  double s = 0.0;
  for (const auto& p : parts) s += std::exp(p.ln_width - m);
  w.ln_width = m + std::log(s);
  w.log10_width = w.ln_width / kLn10;
  bool all = true;
  BigInt total = 0;
  for (const auto& p : parts) {
    if (!p.exact) {
      all = false;
      break;
    }
    total += *p.exact;
  }
  if (all) w.exact = total;
  return w;
}

bool exp_ridge_representable(const MonomialPlan& plan, double epsilon) {
  // the cosh ridge sums |b| e^{+-c t} terms that cancel down to O(1)
  const double lb = ln_abs(plan.sum_abs_coeff()) + 1.0;
  return lb + std::log(0x1.0p-52) < std::log(epsilon / 100.0);
}

MonomialBuildResult build_monomial_network(int d, int k, double epsilon, Activation act,
                                           SeededRng& rng, const MonomialBuildOptions& opts) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (k < 1) throw std::invalid_argument("monomial degree k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  MonomialBuildResult out;
  out.plan = solve_monomial_plan(d, k, epsilon / 2.0);
  {
    WidthInputs in;
    in.k = k;
    in.ln_acc = std::log(epsilon);
    in.acc = rational_from_double(epsilon);
    in.max_b = out.plan.max_abs_coeff();
    in.ln_max_b = ln_abs_precise(*in.max_b);
    out.theoretical_width = monomial_width(in, act);
  }
  const RadialProfile target = monomial_profile(k);
  nlohmann::json meta = {{"epsilon", epsilon}, {"target", "monomial:" + std::to_string(k)},
                         {"d", d}, {"mode", to_string(opts.mode)}};

  if (opts.mode == BuildMode::Theoretical) {
    const WidthEstimate& w = out.theoretical_width;
    if (w.log10_width > std::log10(opts.width_budget)) {
      std::ostringstream os;
      os << "theoretical monomial network needs width 10^" << w.log10_width
         << ", budget " << opts.width_budget;
      throw WidthOverflow(os.str(), w, opts.width_budget);
    }
    // one exp network of the proof's width, copied at each scale
    const double mb = to_double(out.plan.max_abs_coeff());
    const double delta = epsilon / (2.0 * k * mb);
    const double sub_acc = act == Activation::Exp ? delta : delta / 2.0;
    DepthTwoNetwork base = sample_exp_network(d, exp_network_width(sub_acc), rng);
    DepthTwoNetwork net;
    net.dim = d;
    net.activation = Activation::Exp;
    net.output_bias = to_double(out.plan.b0);
    for (int j = 0; j < k; ++j) {
      const double c = to_double(out.plan.scales[j]);
      const double b = to_double(out.plan.coeffs[j]);
      for (std::size_t i = 0; i < base.width(); ++i) {
        std::vector<double> w2 = base.hidden[i].weight;
        for (double& x : w2) x *= c;
        net.add_unit(std::move(w2), 0.0, b * base.output_weights[i]);
      }
    }
    if (act == Activation::ReLU) {
      net = substitute_activation(net, delta / 2.0);
    }
    net.meta = meta;
    out.report = estimate_sup_error(net, target, opts.budget, rng.next_u64());
    out.directions = base.width();
    out.units_per_direction = act == Activation::Exp ? k : net.width() / base.width();
    out.network = std::move(net);
    if (out.report.sup_estimate > epsilon)
      throw VerificationFailure("theoretical monomial network fails the empirical check",
                                out.network, out.report);
    return out;
  }

  const RidgeSeries series = monomial_ridge_series(out.plan);
  const EvenRidge U = ridge_from_rationals(series.q, series.tail_bound);
  RidgeGrowth growth{opts.budget, opts.width_budget, opts.dirs_start, opts.dirs_max};
  std::function<DepthTwoNetwork(const std::vector<double>&)> assemble;
  std::size_t per_dir = 0;
  if (act == Activation::ReLU) {
    UnivariateApprox h = approx_univariate_relu_measured([&U](double t) { return U.eval(t); }, 1.0,
                                                         epsilon / 4.0);
    per_dir = h.width();
    assemble = [d, h](const std::vector<double>& dirs) { return assemble_relu_ridge(d, dirs, h, 0.0); };
  } else {
    if (!exp_ridge_representable(out.plan, epsilon))
      throw std::range_error("exp activation: plan coefficients too large for double evaluation");
    std::vector<CoshTerm> terms;
    for (int j = 0; j < k; ++j)
      terms.push_back({to_double(out.plan.scales[j]), to_double(out.plan.coeffs[j])});
    const double b0 = to_double(out.plan.b0);
    per_dir = 2 * terms.size();
    assemble = [d, terms, b0](const std::vector<double>& dirs) {
      return assemble_cosh_ridge(d, dirs, terms, b0);
    };
  }
  RidgeGrowthResult g = grow_ridge_network(d, assemble, per_dir, target, epsilon, rng, growth);
  out.network = std::move(g.network);
  out.network.meta = meta;
  out.report = g.report;
  out.directions = g.directions;
  out.units_per_direction = per_dir;
  return out;
}

}  // namespace radialnet
