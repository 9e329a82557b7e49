#pragma once

#include <cstdint>

#include <json.hpp>

#include "radialnet/network.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/verify.hpp"

namespace radialnet {

struct ExpFeatureCertificate {
  std::size_t width = 0;
  double epsilon_target = 0.0;
  double empirical_sup_error = 0.0;
  int retries_used = 0;
  std::uint64_t seed = 0;
  ErrorReport report;

  nlohmann::json to_json() const;
};

// ceil(36 / eps^2), with a 1e-9 guard so eps = 0.1 gives 3600 rather than
// 3601 from the binary rounding of eps^2.
std::size_t exp_network_width(double epsilon);

// (1/n) sum_i exp(<w_i, x>) with w_i uniform on the sphere, zero biases.
DepthTwoNetwork sample_exp_network(int d, std::size_t width, SeededRng& rng);

struct ExpBuildResult {
  DepthTwoNetwork network;
  ExpFeatureCertificate certificate;
};

class RetriesExhausted : public Error {
 public:
  RetriesExhausted(const std::string& what, ExpBuildResult best)
      : Error(what), best_(std::move(best)) {}
  const ExpBuildResult& best() const { return best_; }

 private:
  ExpBuildResult best_;
};

// Draws networks until the empirical sup error against F_d(|x|) is within
// epsilon; at most max_retries draws in total.
ExpBuildResult build_exp_network(int d, double epsilon, SeededRng& rng, int max_retries = 16,
                                 const VerifyBudget& budget = {});

}  // namespace radialnet
