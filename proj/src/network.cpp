#include "radialnet/network.hpp"

#include <cmath>

namespace radialnet {

std::string to_string(Activation a) { return a == Activation::Exp ? "exp" : "relu"; }

Activation parse_activation(const std::string& s) {
  if (s == "exp") return Activation::Exp;
  if (s == "relu") return Activation::ReLU;
  throw std::invalid_argument("unknown activation '" + s + "' (expected exp or relu)");
}

void DepthTwoNetwork::add_unit(std::vector<double> w, double b, double v) {
  hidden.push_back({std::move(w), b});
  output_weights.push_back(v);
}

void DepthTwoNetwork::validate() const {
  if (dim < 1) throw std::invalid_argument("network dimension must be >= 1");
  if (hidden.size() != output_weights.size())
    throw std::invalid_argument("hidden layer and output weights differ in length");
  if (!std::isfinite(output_bias)) throw std::invalid_argument("non-finite output bias");
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    const auto& u = hidden[i];
    if (static_cast<int>(u.weight.size()) != dim)
      throw std::invalid_argument("hidden unit " + std::to_string(i) + " has wrong dimension");
    if (!std::isfinite(u.bias) || !std::isfinite(output_weights[i]))
      throw std::invalid_argument("non-finite entry at hidden unit " + std::to_string(i));
    for (double w : u.weight)
      if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight at unit " + std::to_string(i));
  }
}

double activate(Activation a, double z) {
  return a == Activation::Exp ? std::exp(z) : (z > 0.0 ? z : 0.0);
}

double eval_network(const DepthTwoNetwork& net, std::span<const double> x) {
  if (static_cast<int>(x.size()) != net.dim)
    throw std::invalid_argument("input has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(net.dim));
  double s = net.output_bias;
  for (std::size_t i = 0; i < net.hidden.size(); ++i) {
    const auto& u = net.hidden[i];
    double z = u.bias;
    for (int k = 0; k < net.dim; ++k) z += u.weight[k] * x[k];
    s += net.output_weights[i] * activate(net.activation, z);
  }
  return s;
}

nlohmann::json network_to_json(const DepthTwoNetwork& net) {
  nlohmann::json hidden = nlohmann::json::array();
  for (const auto& u : net.hidden) hidden.push_back({{"w", u.weight}, {"b", u.bias}});
  return {{"dim", net.dim},
          {"activation", to_string(net.activation)},
          {"hidden", std::move(hidden)},
          {"v", net.output_weights},
          {"b0", net.output_bias},
          {"meta", net.meta}};
}

DepthTwoNetwork network_from_json(const nlohmann::json& j) {
  DepthTwoNetwork net;
  try {
    net.dim = j.at("dim").get<int>();
    net.activation = parse_activation(j.at("activation").get<std::string>());
    for (const auto& h : j.at("hidden"))
      net.hidden.push_back({h.at("w").get<std::vector<double>>(), h.at("b").get<double>()});
    net.output_weights = j.at("v").get<std::vector<double>>();
    net.output_bias = j.at("b0").get<double>();
    if (j.contains("meta")) net.meta = j.at("meta");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed network JSON: ") + e.what());
  }
  net.validate();
  return net;
}

}  // namespace radialnet
