#pragma once

#include <functional>
#include <vector>

#include "radialnet/activation.hpp"
#include "radialnet/bigrational.hpp"
#include "radialnet/network.hpp"
#include "radialnet/profile.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/verify.hpp"

namespace radialnet {

// U(t) = sum_m coeff[m] t^{2m}, evaluated by Horner in t^2.
struct EvenRidge {
  std::vector<double> coeff;
  double tail_bound = 0.0;

  double eval(double t) const;
  double abs_sum() const;
};

EvenRidge ridge_from_rationals(const std::vector<BigRational>& q, double tail_bound = 0.0);

// weight * cosh(scale * t)
struct CoshTerm {
  double scale;
  double weight;
};

// N unit directions, row-major N x d. Drawn sequentially so the first N rows
// of a longer draw from the same seed are the same directions.
std::vector<double> sample_directions(int d, std::size_t count, SeededRng& rng);

// bias + (1/N) sum_i h(<w_i, x>) with h a ReLU combination.
DepthTwoNetwork assemble_relu_ridge(int d, const std::vector<double>& dirs,
                                    const UnivariateApprox& h, double bias);
// bias + (1/N) sum_i sum_j weight_j cosh(scale_j <w_i,x>), two exp units
// per cosh.
DepthTwoNetwork assemble_cosh_ridge(int d, const std::vector<double>& dirs,
                                    const std::vector<CoshTerm>& terms, double bias);

// Merge hidden units with bitwise-identical (w, b), summing output weights
// in order of first appearance.
DepthTwoNetwork compact_network(const DepthTwoNetwork& net);

struct RidgeGrowth {
  VerifyBudget budget;
  double width_budget = 2e7;
  std::size_t dirs_start = 64;
  std::size_t dirs_max = 1u << 17;
};

struct RidgeGrowthResult {
  DepthTwoNetwork network;
  ErrorReport report;
  std::size_t directions = 0;
  std::vector<double> dirs;
  std::uint64_t verify_seed = 0;
};

// Doubles the direction count from dirs_start until the network passes the
// sup check at epsilon: a cheap screen at a tenth of the budget first, then
// the full budget. Directions extend one stream, so each step keeps the
// previous directions. Throws VerificationFailure with the best attempt.
RidgeGrowthResult grow_ridge_network(
    int d, const std::function<DepthTwoNetwork(const std::vector<double>&)>& assemble,
    std::size_t units_per_direction, const RadialProfile& target, double epsilon, SeededRng& rng,
    const RidgeGrowth& growth);

}  // namespace radialnet
