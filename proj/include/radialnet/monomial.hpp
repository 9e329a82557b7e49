#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "radialnet/bigrational.hpp"
#include "radialnet/network.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/verify.hpp"

namespace radialnet {

// Coefficients turning scaled copies of F_d into z^{2n}:
//   b0 + sum_k b_k F_d(c_k z) = z^{2n} + O(z^{2n+2}),  c_k = eta^k.
struct MonomialPlan {
  int d = 0;
  int n = 0;
  BigRational eta;
  std::vector<BigRational> scales;  // c_1..c_n
  std::vector<BigRational> coeffs;  // b_1..b_n
  BigRational b0;
  double epsilon_target = 0.0;

  BigRational max_abs_coeff() const;
  BigRational sum_abs_coeff() const;
  nlohmann::json to_json() const;
};

enum class PlanSolver { ExplicitInverse, Elimination };

// Largest decimal with `digits` significant digits that is <= x (x > 0).
BigRational truncate_significant(double x, int digits = 6);
// min{1/2, 1/n, eps/(8e)} truncated to 6 significant digits.
BigRational plan_eta(int n, double epsilon);

// The z^{2i} coefficient of F_d(eta^j z) is alpha_{2i} eta^{2ij}, so the
// system is A V b = e_n with V_{ij} = (eta^2)^{ij}. ExplicitInverse uses the
// closed form of the last column of V^{-1} (O(n^2) rational work),
// Elimination runs exact Gauss-Jordan; both return identical rationals.
MonomialPlan solve_monomial_plan(int d, int n, double epsilon,
                                 PlanSolver solver = PlanSolver::ExplicitInverse);
// Exact checks of |c_k| <= 1, constant cancellation and degree matching.
// Throws std::logic_error naming the failed invariant.
void check_plan(const MonomialPlan& plan);

// t_{2i}: coefficient of z^{2i} in b0 + sum_k b_k F_d(c_k z).
BigRational plan_series_coefficient(const MonomialPlan& plan, int i);
// Same with every F_d truncated after z^{2n}, at a rational point; exactly 0.
BigRational plan_truncated_residual(const MonomialPlan& plan, const BigRational& z);
// max_z |b0 + sum_k b_k F_d(c_k z) - z^{2n}| at GMP precision, F_d summed to
// 1e-3 eps / sum|b_k|.
double plan_residual(const MonomialPlan& plan, std::span<const double> z_grid);

// log10 of the bounds used for the coefficient growth and series tail.
// "stated": 2e/alpha_{2n} eta^{j^2/2 - jn - j/2} and 4e eta^{2i-n};
// "corrected": e/alpha_{2n} eta^{j^2 - 2jn - j} and 4e eta^{2(i-n)}, the
// forms that follow for the eta^2 Vandermonde.
double log10_coeff_bound_stated(const MonomialPlan& plan, int j);
double log10_coeff_bound_corrected(const MonomialPlan& plan, int j);
// Exact check |t_{2i}| <= 4e eta^{p} with e replaced by a rational lower
// bound (so a pass is rigorous). `corrected` selects p = 2(i-n) vs 2i-n.
bool tail_bound_holds(const MonomialPlan& plan, int i, bool corrected);
// |t_{2i}| / (4e eta^p) as a double (log-safe).
double tail_bound_ratio(const MonomialPlan& plan, int i, bool corrected);

// Ridge polynomial u(t) = sum_m q_m t^{2m}, q_m = s_{2m}/(2m)!,
// s_{2m} = sum_j b_j c_j^{2m}: the even part of sum_j b_j exp(c_j t) + b0.
// Averaging u(<w,x>) over w on the sphere gives sum_m t_{2m} |x|^{2m}.
// q_m = 0 exactly for m < n. Terms are added until the rigorous tail bound
// for |t| <= 1 drops below 1e-20 |q_n|.
struct RidgeSeries {
  std::vector<BigRational> q;  // q[m], m = 0..M
  double tail_bound = 0.0;     // sum_{m > M} |q_m|
};
RidgeSeries monomial_ridge_series(const MonomialPlan& plan);

}  // namespace radialnet

#include "radialnet/errors.hpp"

namespace radialnet {

// Width of the proof's monomial network: k scales, each an F_d network at
// accuracy delta = acc / (2k max|b|). Exp: ceil(36/delta^2) units per scale.
// ReLU: an exp network at delta/2 with every unit replaced by the knot-rule
// approximant at delta/2, i.e. ceil(144/delta^2) * (ceil(4e/delta) + 1).
// Accuracies and coefficients are passed as natural logs (they leave the
// double range quickly); the exact integer is produced when both exact
// values are given and the result has few enough digits.
struct WidthInputs {
  int k = 1;
  double ln_acc = 0.0;
  double ln_max_b = 0.0;
  std::optional<BigRational> acc;
  std::optional<BigRational> max_b;
};
WidthEstimate monomial_width(const WidthInputs& in, Activation act);
// Same with the bound e/alpha_{2k} eta^{-(k^2+k)} for max|b| (eta from the
// plan solved at acc/2), for degrees where the exact solve is out of reach.
WidthEstimate monomial_width_bound(int d, int k, double ln_acc, const std::optional<BigRational>& acc,
                                   Activation act);
WidthEstimate monomial_theoretical_width(int d, int k, double epsilon, Activation act);
// Exact sum of estimates (log-sum-exp when any exact value is missing).
WidthEstimate sum_widths(const std::vector<WidthEstimate>& parts);
// plan_eta for an accuracy given by its natural log.
BigRational plan_eta_log(int n, double ln_epsilon);

struct MonomialBuildOptions {
  BuildMode mode = BuildMode::Tuned;
  VerifyBudget budget;
  double width_budget = 2e7;
  std::size_t dirs_start = 64;
  std::size_t dirs_max = 1u << 17;
};

struct MonomialBuildResult {
  DepthTwoNetwork network;
  MonomialPlan plan;
  ErrorReport report;
  std::size_t directions = 0;
  std::size_t units_per_direction = 0;
  WidthEstimate theoretical_width;
};

// Network for |x|^{2k} on the ball. Tuned: every scale shares the same
// random directions, so the sub-networks collapse to one ridge function per
// direction (ReLU: its PWL interpolant), and the direction count grows
// until the empirical check passes. Theoretical: the proof's widths, built
// only when they fit width_budget, otherwise WidthOverflow.
MonomialBuildResult build_monomial_network(int d, int k, double epsilon, Activation act,
                                           SeededRng& rng, const MonomialBuildOptions& opts = {});

// Largest |b| for which exp-activation ridges still evaluate accurately
// in double (cancellation of sum b_j exp(c_j t) to the epsilon level).
bool exp_ridge_representable(const MonomialPlan& plan, double epsilon);

}  // namespace radialnet
