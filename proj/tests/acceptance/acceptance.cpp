// One line per criterion: "ACn PASS|FAIL <seconds>s <details>".
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "radialnet/bernstein.hpp"
#include "radialnet/expfeat.hpp"
#include "radialnet/fourier.hpp"
#include "radialnet/kernels.hpp"
#include "radialnet/monomial.hpp"
#include "radialnet/pipeline.hpp"
#include "radialnet/specialfn.hpp"
#include "radialnet/sphere.hpp"
#include "radialnet/verify.hpp"

using namespace radialnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// networks collected for the serialization round trip
struct Suite {
  std::string name;
  DepthTwoNetwork net;
  RadialProfile target;
  ErrorReport report;
};
std::vector<Suite> suite;

void keep(const std::string& name, const DepthTwoNetwork& net, const RadialProfile& target,
          const ErrorReport& rep) {
  suite.push_back({name, net, target, rep});
}

std::string num(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

// least-squares slope of y on x
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Outcome ac1() {
  int mismatches = 0, odd_nonzero = 0;
  for (int d = 2; d <= 30; ++d)
    for (int n = 0; n <= 24; ++n) {
      const BigRational s = a_n_sum(d, n);
      if (s != a_n_closed(d, n)) ++mismatches;
      if (n % 2 == 1 && s != 0) ++odd_nonzero;
    }
  return {mismatches == 0 && odd_nonzero == 0,
          "mismatches=" + std::to_string(mismatches) + " odd_nonzero=" + std::to_string(odd_nonzero) +
              " over 29x25 pairs"};
}

Outcome ac2() {
  double worst = 0;
  int wd = 0;
  double wz = 0;
  for (int d = 2; d <= 64; ++d)
    for (int i = 0; i <= 100; ++i) {
      const double z = i / 100.0;
      const double diff = std::abs(fd_eval_series(d, z, 1e-16) - fd_eval_closed(d, z, 1e-16));
      if (diff > worst) worst = diff, wd = d, wz = z;
    }
  return {worst <= 1e-10, "max |series - closed| = " + num(worst) + " at d=" + std::to_string(wd) +
                              " z=" + num(wz) + " (limit 1e-10)"};
}

Outcome ac3() {
  bool ok = true;
  std::string detail;
  const VerifyBudget base{20000, 10};
  const VerifyBudget big{200000, 10};
  for (int d : {2, 10, 50}) {
    const std::size_t w = exp_network_width(0.1);
    SeededRng rng(0xac3000 + d);
    ExpBuildResult r;
    bool built = true;
    try {
      r = build_exp_network(d, 0.1, rng, 16, base);
    } catch (const RetriesExhausted& e) {
      r = e.best();
      built = false;
    }
    const double e0 = r.certificate.empirical_sup_error;
    const double e10 = estimate_sup_error(r.network, fd_profile(d), big, 0xbeef00 + d).sup_estimate;
    const double moved = std::abs(e10 - e0) / e0;
    const bool cell = w == 3600 && r.network.width() == 3600 && built && e0 <= 0.1 &&
                      r.certificate.retries_used <= 16 && moved < 0.2;
    ok = ok && cell;
    detail += "d=" + std::to_string(d) + ": width " + std::to_string(r.network.width()) + " sup " + num(e0) +
              " draws " + std::to_string(r.certificate.retries_used) + " 10x-shift " + num(100 * moved, 3) +
              "%; ";
    keep("exp_d" + std::to_string(d), r.network, fd_profile(d), r.certificate.report);
  }
  return {ok, detail};
}

Outcome ac4() {
  bool ok = true;
  std::string detail;
  const double crit = ks_critical(0.01, 10000);
  for (int d : {2, 3, 10, 50}) {
    SeededRng rng(0xac4000 + d);
    std::vector<double> x(d, 0.0);
    x[0] = 0.6;
    x[d - 1] += 0.3;
    const double ks = beta_law_check(d, x, 10000, rng);
    ok = ok && ks <= crit;
    detail += "d=" + std::to_string(d) + " D=" + num(ks) + "; ";
  }
  return {ok, detail + "critical " + num(crit)};
}

Outcome ac5() {
  int structural = 0, residual_fail = 0, stated_fail = 0, corrected_fail = 0, checked = 0;
  double worst_residual = 0, worst_ratio = 0;
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
  for (int d = 2; d <= 10; ++d)
    for (int n = 1; n <= 5; ++n) {
      const auto plan = solve_monomial_plan(d, n, 0.1);
      try {
        check_plan(plan);
      } catch (const std::logic_error&) {
        ++structural;
      }
      const double res = plan_residual(plan, grid);
      worst_residual = std::max(worst_residual, res);
      if (res > 0.1) ++residual_fail;
      for (int i = n + 1; i <= n + 20; ++i) {
        ++checked;
        if (!tail_bound_holds(plan, i, false)) {
          ++stated_fail;
          worst_ratio = std::max(worst_ratio, tail_bound_ratio(plan, i, false));
        }
        if (!tail_bound_holds(plan, i, true)) ++corrected_fail;
      }
    }
  const bool ok = structural == 0 && residual_fail == 0 && stated_fail == 0;
  return {ok, "structural " + std::to_string(structural) + ", residual max " + num(worst_residual) +
                  ", stated tail |t_2i| <= 4e eta^(2i-n) fails " + std::to_string(stated_fail) + "/" +
                  std::to_string(checked) + " (worst ratio " + num(worst_ratio) +
                  "), corrected 4e eta^(2(i-n)) fails " + std::to_string(corrected_fail)};
}

Outcome ac6() {
  bool ok = true;
  std::string detail;
  struct Case {
    int d, k;
  };
  for (const Case c : {Case{5, 1}, Case{3, 2}}) {
    SeededRng rng(0xac6000 + 10 * c.d + c.k);
    const auto r = build_monomial_network(c.d, c.k, 0.1, Activation::ReLU, rng);
    ok = ok && r.report.sup_estimate <= 0.1;
    detail += "|x|^" + std::to_string(2 * c.k) + " d=" + std::to_string(c.d) + ": sup " +
              num(r.report.sup_estimate) + " width " + std::to_string(r.network.width()) + "; ";
    keep("monomial_d" + std::to_string(c.d) + "_k" + std::to_string(c.k), r.network, monomial_profile(c.k),
         r.report);
  }

  // ln W against k^2 at d = 5, eps = 0.1
  std::vector<double> k2, lw;
  for (int k = 1; k <= 5; ++k) {
    k2.push_back(static_cast<double>(k * k));
    lw.push_back(monomial_theoretical_width(5, k, 0.1, Activation::ReLU).ln_width);
  }
  const double sk = slope(k2, lw);
  // ln W against ln d at k = 2: ratio of ln W to ln(d/eps) stays within a constant factor
  double lo = HUGE_VAL, hi = 0;
  std::vector<double> ld, lwd;
  for (int d : {2, 4, 8, 16, 32, 64, 128, 256}) {
    const double l = monomial_theoretical_width(d, 2, 0.1, Activation::ReLU).ln_width;
    const double ratio = l / std::log(d / 0.1);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ld.push_back(std::log(static_cast<double>(d)));
    lwd.push_back(l);
  }
  const double sd = slope(ld, lwd);
  ok = ok && sk > 0 && sd > 0 && hi / lo <= 4.0;
  detail += "d(lnW)/d(k^2) = " + num(sk) + ", d(lnW)/d(ln d) = " + num(sd) + ", lnW/ln(d/eps) in [" +
            num(lo) + ", " + num(hi) + "]";
  return {ok, detail};
}

Outcome ac7() {
  const auto p = even_poly_approx(make_profile("abs_half"), 0.5);
  const BigRational cap = pow(make_rational(2), 64);
  int over = 0;
  for (const auto& c : p.coeffs)
    if (abs(c) > cap) ++over;
  // odd part p(t) - p(-t) at a rational grid: exactly zero
  int odd = 0;
  for (long i = 1; i <= 64; ++i) {
    const BigRational t = make_rational(i, 64);
    if (p.eval_exact(t) != p.eval_exact(-t)) ++odd;
  }
  const bool ok = p.degree == 64 && p.grid_error <= 0.5 && over == 0 && odd == 0;
  return {ok, "degree " + std::to_string(p.degree) + ", grid sup " + num(p.grid_error) + ", |p_2k| > 2^64: " +
                  std::to_string(over) + ", odd-part nonzero at " + std::to_string(odd) + " points, max log2|p| " +
                  std::to_string(log2_abs(p.abs_coeff_sum()))};
}

Outcome ac8() {
  bool ok = true;
  std::string detail;
  struct Case {
    const char* name;
    double eps;
  };
  for (const Case c : {Case{"linear", 0.25}, Case{"square", 0.2}}) {
    SeededRng rng(0xac8000 + static_cast<std::uint64_t>(100 * c.eps));
    const auto prof = make_profile(c.name);
    const auto r = build_radial_network(prof, 3, c.eps, Activation::ReLU, rng);
    ok = ok && r.report.sup_estimate <= c.eps;
    detail += std::string(c.name) + " eps=" + num(c.eps) + ": sup " + num(r.report.sup_estimate) + " width " +
              std::to_string(r.network.width()) + "; ";
    keep(std::string("pipeline_") + c.name, r.network, prof, r.report);
  }
  cli::JobConfig cfg;
  cfg.set("target", "profile:linear");
  cfg.set("d", "3");
  cfg.set("epsilon", "0.05");
  cfg.set("mode", "theoretical");
  const auto th = cli::run_build(cfg, 1);
  const bool overflow = th.exit_code == cli::kWidthOverflow && th.error.contains("required_width");
  ok = ok && overflow;
  detail += "theoretical eps=0.05: exit " + std::to_string(th.exit_code);
  if (overflow) detail += ", required width 10^" + num(th.error.at("required_width").at("log10_width").get<double>(), 6);
  return {ok, detail};
}

Outcome ac9() {
  bool ok = true;
  std::string detail;
  const auto prof = make_profile("linear");
  {
    SeededRng rng(0xac9000);
    const auto b = grow_fourier_network(prof, 1, 0.25, rng);
    ok = ok && b.report.sup_estimate <= 0.25;
    detail += "build: width " + std::to_string(b.network.width()) + " sup " + num(b.report.sup_estimate) + "; ";
    keep("fourier_d1", b.network, prof, b.report);
  }
  {
    const auto g = mollify(prof, 1, 0.25);
    const double gap = mollification_gap(g, 101);
    ok = ok && gap <= 0.125;
    detail += "gap " + num(gap) + " (<= 0.125); ";
  }
  {
    // fit error against the smoothed target, 3 seeds per width
    std::vector<double> ln_n, ln_e;
    for (std::size_t n = 32; n <= 512; n *= 2) {
      double s = 0;
      for (int seed = 0; seed < 3; ++seed) {
        SeededRng rng(0xac9100 + seed);
        FourierOptions o;
        o.budget = {20000, 10};
        s += std::log(build_fourier_network(prof, 1, 0.25, n, rng, o).fit_error);
      }
      ln_n.push_back(std::log(static_cast<double>(n)));
      ln_e.push_back(s / 3);
    }
    const double sl = slope(ln_n, ln_e);
    const double limit = -(0.5 + 1.0) + 0.2;
    ok = ok && sl <= limit;
    detail += "rate slope " + num(sl) + " (<= " + num(limit) + "); ";
  }
  {
    std::vector<double> ln_eps, ln_v;
    std::string vs;
    for (double e : {0.4, 0.2, 0.1}) {
      const auto rep = v_moment(mollify(prof, 1, e));
      ln_eps.push_back(std::log(e));
      ln_v.push_back(std::log(rep.v_moment));
      vs += num(rep.v_moment) + " ";
    }
    const double sl = slope(ln_eps, ln_v);
    const double want = -2.0;
    const bool in = std::abs(sl - want) <= 0.3 * std::abs(want);
    ok = ok && in;
    detail += "v slope " + num(sl) + " (want -2 +/- 30%, v = " + vs + ")";
  }
  return {ok, detail};
}

Outcome ac10() {
  const int d = 10;
  std::vector<double> ln_n, ln_e;
  std::string detail;
  for (std::size_t n : {225u, 900u, 3600u, 14400u}) {
    double s = 0;
    for (int seed = 0; seed < 3; ++seed) {
      SeededRng rng(0xac10000 + 17 * n + seed);
      const auto net = sample_exp_network(d, n, rng);
      s += std::log(estimate_sup_error(net, fd_profile(d), {20000, 10}, 0xac10500 + seed).sup_estimate);
    }
    ln_n.push_back(std::log(static_cast<double>(n)));
    ln_e.push_back(s / 3);
    detail += std::to_string(n) + ":" + num(std::exp(s / 3)) + " ";
  }
  const double sl = slope(ln_n, ln_e);
  return {sl >= -0.7 && sl <= -0.3, "slope " + num(sl) + " in [-0.7, -0.3]; mean sup " + detail};
}

Outcome ac11() {
  int bad = 0;
  std::string detail;
  for (const auto& s : suite) {
    const std::string text = network_to_json(s.net).dump();
    const DepthTwoNetwork back = network_from_json(nlohmann::json::parse(text));
    const auto rep = estimate_sup_error(back, s.target, {s.report.n_samples, s.report.n_restarts}, s.report.seed);
    if (rep.sup_estimate != s.report.sup_estimate) {
      ++bad;
      detail += s.name + " " + num(rep.sup_estimate, 17) + " vs " + num(s.report.sup_estimate, 17) + "; ";
    }
  }
  return {bad == 0 && !suite.empty(),
          std::to_string(suite.size() - bad) + "/" + std::to_string(suite.size()) + " networks reproduce exactly" +
              (detail.empty() ? "" : ": " + detail)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {"AC1", 10, ac1},  {"AC2", 30, ac2},   {"AC3", 180, ac3}, {"AC4", 30, ac4},
      {"AC5", 60, ac5},  {"AC6", 300, ac6},  {"AC7", 60, ac7},  {"AC8", 600, ac8},
      {"AC9", 300, ac9}, {"AC10", 180, ac10}, {"AC11", 600, ac11},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%-4s %s %7.2fs (limit %.0fs) %s%s\n", c.id, pass ? "PASS" : "FAIL", secs, c.limit_s,
                o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, all.size());
  return failed;
}
