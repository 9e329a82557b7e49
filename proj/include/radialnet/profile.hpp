#pragma once

#include <functional>
#include <string>
#include <vector>

namespace radialnet {

// phi : [0,1] -> R with a declared Lipschitz bound; target f(x) = phi(|x|).
struct RadialProfile {
  std::function<double(double)> eval;
  double lipschitz_bound = 1.0;
  std::string label;

  double operator()(double r) const { return eval(r); }
};

// Named zoo: abs_half |z-1/2|, linear z, square z^2 (declared L=2),
// cosine (1-cos(pi z))/pi, zero, const:<c>, expr:<expression in z>.
RadialProfile make_profile(const std::string& name, double lipschitz = 1.0);
RadialProfile constant_profile(double c);
RadialProfile fd_profile(int d);        // F_d(r)
RadialProfile monomial_profile(int k);  // r^{2k}

// Grid check of |phi(a)-phi(b)| <= L|a-b| at `points` equispaced nodes;
// one warning string per violating adjacent pair (capped).
std::vector<std::string> lipschitz_spot_check(const RadialProfile& p, int points = 200);

// Arithmetic expressions in z: + - * / ^, parentheses, unary minus,
// abs sqrt exp log sin cos, constants pi and e.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace radialnet
