#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "radialnet/errors.hpp"

namespace radialnet {

enum class Activation { Exp, ReLU };

std::string to_string(Activation a);
Activation parse_activation(const std::string& s);

struct HiddenUnit {
  std::vector<double> weight;
  double bias = 0.0;
};

// N(x) = output_bias + sum_i output_weights[i] * act(<w_i, x> + b_i)
struct DepthTwoNetwork {
  int dim = 0;
  Activation activation = Activation::ReLU;
  std::vector<HiddenUnit> hidden;
  std::vector<double> output_weights;
  double output_bias = 0.0;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t width() const { return hidden.size(); }
  void add_unit(std::vector<double> w, double b, double v);
  // Throws std::invalid_argument on length mismatch or non-finite entries.
  void validate() const;
};

double activate(Activation a, double z);

// Straight per-unit loop with std::exp; the reference the packed kernels are
// tested against.
double eval_network(const DepthTwoNetwork& net, std::span<const double> x);

nlohmann::json network_to_json(const DepthTwoNetwork& net);
DepthTwoNetwork network_from_json(const nlohmann::json& j);

}  // namespace radialnet
