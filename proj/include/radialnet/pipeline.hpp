#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radialnet/bernstein.hpp"
#include "radialnet/errors.hpp"
#include "radialnet/monomial.hpp"
#include "radialnet/network.hpp"
#include "radialnet/profile.hpp"
#include "radialnet/ridge.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/verify.hpp"

namespace radialnet {

struct PipelineOptions {
  BuildMode mode = BuildMode::Tuned;
  VerifyBudget budget;
  double width_budget = 2e7;
  std::optional<int> degree_override;
  std::size_t dirs_start = 64;
  std::size_t dirs_max = 1u << 17;
  int max_degree = 512;
};

struct PipelinePlan {
  std::string profile_label;
  int d = 0;
  double epsilon = 0.0;
  Activation activation = Activation::ReLU;
  BuildMode mode = BuildMode::Tuned;
  EvenPolynomial even_poly;
  std::vector<int> monomial_degrees;           // k with p_{2k} != 0
  std::vector<double> monomial_accuracies;     // one per entry of monomial_degrees
  std::vector<std::size_t> monomial_widths;    // sub-network widths before merging
  WidthEstimate total_width;                   // sum of monomial_widths
  std::size_t network_width = 0;               // after merging identical units
  std::size_t directions = 0;
  std::size_t units_per_direction = 0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

struct PipelineResult {
  DepthTwoNetwork network;
  ErrorReport report;
  PipelinePlan plan;
  // tuned-mode internals, kept for the concatenation and audit checks
  std::vector<double> dirs;
  std::vector<EvenRidge> monomial_ridges;  // u_k per entry of monomial_degrees
  std::size_t knot_segments = 0;
};

// Profile -> even polynomial at eps/2 -> one monomial network per nonzero
// p_{2k} -> p0 + shift + sum_k p_{2k} N_k. Tuned mode shares one direction
// set across all monomials, so the concatenated network has many identical
// hidden units; these are merged in the returned network (the plan records
// both widths). Theoretical mode only computes the proof's width and throws
// WidthOverflow when it exceeds the budget.
PipelineResult build_radial_network(const RadialProfile& profile, int d, double epsilon,
                                    Activation act, SeededRng& rng, const PipelineOptions& opts = {});

// The proof chain with every constant substituted: Bernstein degree
// n = 2 ceil(32/eps^3), monomials k = 1..n/2 at accuracy eps/(n 2^n), each
// at monomial_width_bound.
WidthEstimate theoretical_width(int d, double epsilon, Activation act = Activation::ReLU);

// The unmerged concatenation sum_k p_{2k} N_k (same function as the merged
// network up to rounding).
DepthTwoNetwork concatenated_network(const PipelineResult& r);

struct AuditPart {
  int k = 0;
  double p = 0.0;
  double sub_error = 0.0;
};
struct TriangleAudit {
  double bernstein_error = 0.0;
  double measured_error = 0.0;
  double bound = 0.0;  // bernstein + sum |p| sub_error
  std::vector<AuditPart> parts;
  bool holds(double slack = 0.10) const { return measured_error <= bound * (1.0 + slack); }
};
// Each N_k verified on its own against |x|^{2k}.
TriangleAudit triangle_audit(const PipelineResult& r, const VerifyBudget& budget, std::uint64_t seed);

}  // namespace radialnet
