#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radialnet/bigrational.hpp"
#include "radialnet/profile.hpp"

namespace radialnet {

// sum_nu c_nu C(n,nu) z^nu (1-z)^{n-nu}, evaluated by de Casteljau.
struct BernsteinPoly {
  std::vector<double> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double z) const;
};

BernsteinPoly bernstein_operator(const std::function<double(double)>& g, int n);

// p(t) = shift + sum_k coeffs[k] t^{2k}, degree = 2 (coeffs.size() - 1).
struct EvenPolynomial {
  int degree = 0;
  std::vector<BigRational> coeffs;
  BigRational shift;
  double grid_error = 0.0;       // max over [0,1] grid of |p(z) - phi(z)|
  std::vector<std::string> warnings;
  // quantized g samples g(nu/n), kept for stable evaluation
  std::vector<BigRational> bernstein_coeffs;

  double eval(double t) const;          // Horner in double
  double eval_bernstein(double t) const;  // de Casteljau on the samples
  BigRational eval_exact(const BigRational& t) const;
  BigRational abs_coeff_sum() const;
  nlohmann::json to_json() const;
};

// 2 ceil(4 / eps^3)
int even_poly_degree(double epsilon);

struct EvenPolyOptions {
  std::optional<int> degree_override;
  unsigned sample_bits = 40;   // samples rounded to multiples of 2^-sample_bits
  int grid_points = 2001;
};

// Shift by phi(1/2), even extension f(t) = phi(|t|) - phi(1/2) on [-1,1],
// g(z) = f(2z - 1), Bernstein operator of degree n, exact conversion to the
// monomial basis in t, symmetrization. Throws std::logic_error if some
// |p_{2k}| exceeds 2^n.
EvenPolynomial even_poly_approx(const RadialProfile& phi, double epsilon,
                                const EvenPolyOptions& opts = {});

// Smallest even degree (up to max_degree) whose Bernstein grid error is
// within target_error.
int smallest_passing_degree(const RadialProfile& phi, double target_error, int max_degree = 512,
                            int grid_points = 2001);

}  // namespace radialnet
