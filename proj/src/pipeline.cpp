#include "radialnet/pipeline.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "radialnet/activation.hpp"

namespace radialnet {

namespace {

BigRational abs_q(const BigRational& q) { return sgn(q) < 0 ? BigRational(-q) : q; }

nlohmann::json accuracies_json(const std::vector<double>& a) {
  bool uniform = !a.empty();
  for (double x : a) uniform = uniform && x == a.front();
  if (uniform && a.size() > 64) return {{"uniform", a.front()}, {"count", a.size()}};
  return a;
}

}  // namespace

nlohmann::json PipelinePlan::to_json() const {
  return {{"profile", profile_label},
          {"d", d},
          {"epsilon", epsilon},
          {"activation", to_string(activation)},
          {"mode", to_string(mode)},
          {"even_poly", even_poly.to_json()},
          {"monomial_degrees", monomial_degrees},
          {"monomial_accuracies", accuracies_json(monomial_accuracies)},
          {"monomial_widths", monomial_widths},
          {"total_width", total_width.to_json()},
          {"network_width", network_width},
          {"directions", directions},
          {"units_per_direction", units_per_direction},
          {"warnings", warnings}};
}

WidthEstimate theoretical_width(int d, double epsilon, Activation act) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const long n = even_poly_degree(epsilon / 2.0);  // 2 ceil(32 / eps^3)
  const double ln_acc = std::log(epsilon) - std::log(static_cast<double>(n)) - n * std::numbers::ln2;
  std::optional<BigRational> acc;
  if (n < 20000) {
    BigRational a = rational_from_double(epsilon) / BigRational(n);
    mpq_div_2exp(a.get_mpq_t(), a.get_mpq_t(), n);
    acc = a;
  }
  std::vector<WidthEstimate> parts;
  parts.reserve(n / 2);
  // the exact total is only attempted when the biggest term is small enough
  const WidthEstimate last = monomial_width_bound(d, static_cast<int>(n / 2), ln_acc, std::nullopt, act);
  const bool exact = acc && last.log10_width < WidthEstimate::kExactDigitCap;
  for (long k = 1; k <= n / 2; ++k)
    parts.push_back(monomial_width_bound(d, static_cast<int>(k), ln_acc,
                                         exact ? acc : std::nullopt, act));
  return sum_widths(parts);
}

PipelineResult build_radial_network(const RadialProfile& profile, int d, double epsilon,
                                    Activation act, SeededRng& rng, const PipelineOptions& opts) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  PipelineResult res;
  PipelinePlan& plan = res.plan;
  plan.profile_label = profile.label;
  plan.d = d;
  plan.epsilon = epsilon;
  plan.activation = act;
  plan.mode = opts.mode;
  plan.warnings = lipschitz_spot_check(profile);
  nlohmann::json meta = {{"epsilon", epsilon}, {"target", "profile:" + profile.label},
                         {"d", d}, {"mode", to_string(opts.mode)}};

  if (opts.mode == BuildMode::Theoretical) {
    const long n = opts.degree_override ? *opts.degree_override : even_poly_degree(epsilon / 2.0);
    const double ln_acc = std::log(epsilon) - std::log(static_cast<double>(n)) - n * std::numbers::ln2;
    plan.monomial_accuracies.assign(n / 2, std::exp(ln_acc));
    if (!opts.degree_override) {
      plan.total_width = theoretical_width(d, epsilon, act);
    } else {
      std::vector<WidthEstimate> parts;
      for (long k = 1; k <= n / 2; ++k)
        parts.push_back(monomial_width_bound(d, static_cast<int>(k), ln_acc, std::nullopt, act));
      plan.total_width = sum_widths(parts);
    }
    if (plan.total_width.log10_width > std::log10(opts.width_budget)) {
      std::ostringstream os;
      os << "theoretical width 10^" << plan.total_width.log10_width << " exceeds budget "
         << opts.width_budget;
      throw WidthOverflow(os.str(), plan.total_width, opts.width_budget);
    }
    // only reachable with a small degree_override: without one n >= 66 and
    // the k = n/2 term alone is above 10^80000
    EvenPolyOptions po;
    po.degree_override = static_cast<int>(n);
    plan.even_poly = even_poly_approx(profile, epsilon, po);
    const EvenPolynomial& ep = plan.even_poly;
    DepthTwoNetwork net;
    net.dim = d;
    net.activation = act;
    net.output_bias = to_double(ep.coeffs[0] + ep.shift);
    MonomialBuildOptions mo;
    mo.mode = BuildMode::Theoretical;
    mo.budget = opts.budget;
    mo.width_budget = opts.width_budget;
    plan.monomial_degrees.clear();
    plan.monomial_accuracies.clear();
    for (std::size_t k = 1; k < ep.coeffs.size(); ++k) {
      if (sgn(ep.coeffs[k]) == 0) continue;
      const double acc = std::exp(ln_acc);
      MonomialBuildResult m = build_monomial_network(d, static_cast<int>(k), acc, act, rng, mo);
      const double p = to_double(ep.coeffs[k]);
      for (std::size_t i = 0; i < m.network.width(); ++i)
        net.add_unit(m.network.hidden[i].weight, m.network.hidden[i].bias, p * m.network.output_weights[i]);
      net.output_bias += p * m.network.output_bias;
      plan.monomial_degrees.push_back(static_cast<int>(k));
      plan.monomial_accuracies.push_back(acc);
      plan.monomial_widths.push_back(m.network.width());
    }
    net.meta = meta;
    plan.network_width = net.width();
    res.report = estimate_sup_error(net, profile, opts.budget, rng.next_u64());
    res.network = std::move(net);
    if (res.report.sup_estimate > epsilon)
      throw VerificationFailure("theoretical pipeline network fails the empirical check", res.network,
                                res.report);
    return res;
  }

  // Bernstein stage at eps/2
  EvenPolyOptions po;
  po.degree_override = opts.degree_override
                           ? opts.degree_override
                           : std::optional<int>(smallest_passing_degree(profile, epsilon / 2.0, opts.max_degree));
  plan.even_poly = even_poly_approx(profile, epsilon, po);
  for (const auto& w : plan.even_poly.warnings) plan.warnings.push_back(w);
  const EvenPolynomial& ep = plan.even_poly;
  const double bias = to_double(ep.coeffs[0] + ep.shift);

  BigRational psum(0);
  for (std::size_t k = 1; k < ep.coeffs.size(); ++k)
    if (sgn(ep.coeffs[k]) != 0) {
      plan.monomial_degrees.push_back(static_cast<int>(k));
      psum += abs_q(ep.coeffs[k]);
    }

  if (plan.monomial_degrees.empty()) {
    res.network.dim = d;
    res.network.activation = act;
    res.network.output_bias = bias;
    res.network.meta = meta;
    res.report = estimate_sup_error(res.network, profile, opts.budget, rng.next_u64());
    plan.total_width = sum_widths({});
    return res;
  }

  const double acc = epsilon / (2.0 * to_double(psum));
  std::vector<BigRational> U;  // combined ridge, exact
  std::vector<CoshTerm> cosh_terms;
  BigRational cosh_b0(0);
  double cosh_scale = 0.0;
  for (int k : plan.monomial_degrees) {
    plan.monomial_accuracies.push_back(acc);
    MonomialPlan mp = solve_monomial_plan(d, k, acc / 2.0);
    RidgeSeries rs = monomial_ridge_series(mp);
    const BigRational& pk = ep.coeffs[k];
    if (U.size() < rs.q.size()) U.resize(rs.q.size(), BigRational(0));
    for (std::size_t m = 0; m < rs.q.size(); ++m) U[m] += pk * rs.q[m];
    res.monomial_ridges.push_back(ridge_from_rationals(rs.q, rs.tail_bound));
    if (act == Activation::Exp) {
      cosh_scale += to_double(abs_q(pk) * mp.sum_abs_coeff());
      for (int j = 0; j < k; ++j)
        cosh_terms.push_back({to_double(mp.scales[j]), to_double(pk * mp.coeffs[j])});
      cosh_b0 += pk * mp.b0;
    }
  }
  const EvenRidge ridge = ridge_from_rationals(U);
  const double remaining = epsilon - ep.grid_error;

  RidgeGrowth growth{opts.budget, opts.width_budget, opts.dirs_start, opts.dirs_max};
  std::function<DepthTwoNetwork(const std::vector<double>&)> assemble;
  std::size_t per_dir = 0;
  if (act == Activation::ReLU) {
    UnivariateApprox h = approx_univariate_relu_measured([&ridge](double t) { return ridge.eval(t); },
                                                         1.0, remaining / 4.0);
    per_dir = h.width();
    res.knot_segments = h.knots.size() - 1;
    assemble = [d, h, bias](const std::vector<double>& dirs) {
      return assemble_relu_ridge(d, dirs, h, bias);
    };
  } else {
    if (std::log(cosh_scale) + std::log(0x1.0p-52) > std::log(epsilon / 100.0))
      throw std::range_error("exp activation: monomial coefficients too large for double evaluation");
    per_dir = 2 * cosh_terms.size();
    const double b = bias + to_double(cosh_b0);
    assemble = [d, cosh_terms, b](const std::vector<double>& dirs) {
      return assemble_cosh_ridge(d, dirs, cosh_terms, b);
    };
  }

  try {
    RidgeGrowthResult g = grow_ridge_network(d, assemble, per_dir, profile, epsilon, rng, growth);
    res.network = std::move(g.network);
    res.report = g.report;
    plan.directions = g.directions;
    res.dirs = std::move(g.dirs);
  } catch (VerificationFailure& f) {
    DepthTwoNetwork best = f.best();
    best.meta = meta;
    throw VerificationFailure(f.what(), best, f.report());
  }
  res.network.meta = meta;
  plan.units_per_direction = per_dir;
  // before merging, monomial k contributes its own copy of every unit:
  // N (K+1) ReLU units, or 2k exp units per direction
  std::vector<WidthEstimate> parts;
  for (int k : plan.monomial_degrees) {
    std::size_t w = plan.directions * (act == Activation::ReLU ? per_dir : 2 * static_cast<std::size_t>(k));
    plan.monomial_widths.push_back(w);
    WidthEstimate e;
    e.ln_width = std::log(static_cast<double>(w));
    e.log10_width = std::log10(static_cast<double>(w));
    e.exact = BigInt(static_cast<unsigned long>(w));
    parts.push_back(e);
  }
  plan.total_width = sum_widths(parts);
  plan.network_width = res.network.width();
  return res;
}

DepthTwoNetwork concatenated_network(const PipelineResult& r) {
  const PipelinePlan& plan = r.plan;
  if (plan.activation != Activation::ReLU || r.dirs.empty())
    throw std::invalid_argument("concatenation is available for tuned ReLU builds");
  const int d = plan.d;
  const EvenPolynomial& ep = plan.even_poly;
  DepthTwoNetwork out;
  out.dim = d;
  out.activation = Activation::ReLU;
  out.meta = r.network.meta;
  double bias = to_double(ep.coeffs[0] + ep.shift);
  for (std::size_t idx = 0; idx < plan.monomial_degrees.size(); ++idx) {
    const int k = plan.monomial_degrees[idx];
    const EvenRidge& u = r.monomial_ridges[idx];
    UnivariateApprox h = relu_uniform([&u](double t) { return u.eval(t); }, 1.0, r.knot_segments);
    DepthTwoNetwork nk = assemble_relu_ridge(d, r.dirs, h, 0.0);
    const double p = to_double(ep.coeffs[k]);
    for (std::size_t i = 0; i < nk.width(); ++i)
      out.add_unit(nk.hidden[i].weight, nk.hidden[i].bias, p * nk.output_weights[i]);
    bias += p * nk.output_bias;
  }
  out.output_bias = bias;
  return out;
}

TriangleAudit triangle_audit(const PipelineResult& r, const VerifyBudget& budget, std::uint64_t seed) {
  const PipelinePlan& plan = r.plan;
  TriangleAudit a;
  a.bernstein_error = plan.even_poly.grid_error;
  a.measured_error = r.report.sup_estimate;
  a.bound = a.bernstein_error;
  for (std::size_t idx = 0; idx < plan.monomial_degrees.size(); ++idx) {
    const int k = plan.monomial_degrees[idx];
    const EvenRidge& u = r.monomial_ridges[idx];
    UnivariateApprox h = relu_uniform([&u](double t) { return u.eval(t); }, 1.0, r.knot_segments);
    DepthTwoNetwork nk = assemble_relu_ridge(plan.d, r.dirs, h, 0.0);
    ErrorReport rep = estimate_sup_error(nk, monomial_profile(k), budget, derive_seed(seed, k));
    AuditPart part{k, to_double(plan.even_poly.coeffs[k]), rep.sup_estimate};
    a.bound += std::fabs(part.p) * part.sub_error;
    a.parts.push_back(part);
  }
  return a;
}

}  // namespace radialnet
