#include "radialnet/profile.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "radialnet/specialfn.hpp"

namespace radialnet {

RadialProfile constant_profile(double c) {
  std::ostringstream os;
  os.precision(17);
  os << "const:" << c;
  return {[c](double) { return c; }, 0.0, os.str()};
}

RadialProfile fd_profile(int d) {
  if (d < 2) throw std::invalid_argument("F_d needs d >= 2");
  return {[d](double r) { return fd_eval_series(d, std::min(std::fabs(r), 1.0), 1e-15); },
          std::exp(1.0), "fd:" + std::to_string(d)};
}

RadialProfile monomial_profile(int k) {
  if (k < 1) throw std::invalid_argument("monomial degree k must be >= 1");
  return {[k](double r) { return std::pow(r * r, k); }, 2.0 * k, "monomial:" + std::to_string(k)};
}

RadialProfile make_profile(const std::string& name, double lipschitz) {
  using std::numbers::pi;
  if (name == "abs_half") return {[](double z) { return std::fabs(z - 0.5); }, 1.0, name};
  if (name == "linear") return {[](double z) { return z; }, 1.0, name};
  if (name == "square") return {[](double z) { return z * z; }, 2.0, name};
  if (name == "cosine") return {[](double z) { return (1.0 - std::cos(pi * z)) / pi; }, 1.0, name};
  if (name == "zero") return {[](double) { return 0.0; }, 0.0, name};
  if (name.rfind("const:", 0) == 0) {
    double c = std::stod(name.substr(6));
    RadialProfile p = constant_profile(c);
    p.label = name;
    return p;
  }
  if (name.rfind("expr:", 0) == 0) return {parse_expression(name.substr(5)), lipschitz, name};
  throw std::invalid_argument("unknown profile '" + name + "'");
}

std::vector<std::string> lipschitz_spot_check(const RadialProfile& p, int points) {
  std::vector<std::string> warnings;
  if (points < 2) return warnings;
  const double h = 1.0 / (points - 1);
  double prev = p(0.0);
  int violations = 0;
  for (int i = 1; i < points; ++i) {
    double z = i * h;
    double cur = p(z);
    double slope = std::fabs(cur - prev) / h;
    if (slope > p.lipschitz_bound * (1.0 + 1e-9) + 1e-12) {
      if (violations < 5) {
        std::ostringstream os;
        os << "profile " << p.label << ": slope " << slope << " on [" << z - h << ", " << z
           << "] exceeds declared Lipschitz bound " << p.lipschitz_bound;
        warnings.push_back(os.str());
      }
      ++violations;
    }
    prev = cur;
  }
  if (violations > 5)
    warnings.push_back("profile " + p.label + ": " + std::to_string(violations - 5) +
                       " further Lipschitz violations");
  return warnings;
}

}  // namespace radialnet
