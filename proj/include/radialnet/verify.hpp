#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "radialnet/kernels.hpp"
#include "radialnet/network.hpp"
#include "radialnet/profile.hpp"

namespace radialnet {

struct VerifyBudget {
  std::size_t samples = 100000;
  int restarts = 10;
};

enum class ExecPolicy { Parallel, Serial };

struct ErrorReport {
  double sup_estimate = 0.0;
  std::vector<double> argmax_point;
  double l2_estimate = 0.0;
  std::size_t n_samples = 0;
  int n_restarts = 0;
  std::uint64_t seed = 0;
  std::string method;

  nlohmann::json to_json() const;
  static ErrorReport from_json(const nlohmann::json& j);
};

// |N(x) - phi(|x|)|, the quantity every estimator maximizes.
double pointwise_error(const PackedNetwork& net, const RadialProfile& target,
                       std::span<const double> x);

// Empirical sup-norm error on the unit ball. Half the budget goes to radii
// 1 - vdc(j) (base-2 van der Corput) with random directions, half to uniform
// ball points; each sample draws from its own (seed, index)-derived stream so
// a larger budget always contains the smaller one's samples. The `restarts`
// best samples then seed a projected pattern search (step 0.1, six halvings).
// This is a lower estimate of the true sup, never a bound.
ErrorReport estimate_sup_error(const PackedNetwork& net, const RadialProfile& target,
                               const VerifyBudget& budget, std::uint64_t seed,
                               ExecPolicy policy = ExecPolicy::Parallel);
ErrorReport estimate_sup_error(const DepthTwoNetwork& net, const RadialProfile& target,
                               const VerifyBudget& budget, std::uint64_t seed,
                               ExecPolicy policy = ExecPolicy::Parallel);

struct L2Estimate {
  double mse = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Monte Carlo mean squared error under the uniform ball measure.
L2Estimate estimate_l2_error(const DepthTwoNetwork& net, const RadialProfile& target,
                             std::size_t samples, std::uint64_t seed);

double van_der_corput(std::uint64_t j);

// Tuned growth ran out of budget; carries the best network seen.
class VerificationFailure : public Error {
 public:
  VerificationFailure(const std::string& what, DepthTwoNetwork best, ErrorReport report)
      : Error(what), best_(std::move(best)), report_(std::move(report)) {}
  const DepthTwoNetwork& best() const { return best_; }
  const ErrorReport& report() const { return report_; }

 private:
  DepthTwoNetwork best_;
  ErrorReport report_;
};

}  // namespace radialnet
