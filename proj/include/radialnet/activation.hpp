#pragma once

#include <functional>
#include <vector>

#include "radialnet/network.hpp"

namespace radialnet {

// alpha * act(beta * x - gamma)
struct RidgeTerm {
  double alpha = 0.0, beta = 1.0, gamma = 0.0;
};

// h(x) = constant + sum_i alpha_i act(beta_i x - gamma_i). The ReLU
// builders also keep the knot/value table the combination was derived from.
struct UnivariateApprox {
  double constant = 0.0;
  std::vector<RidgeTerm> terms;
  Activation activation = Activation::ReLU;
  double certified_delta = 0.0;
  double radius = 1.0;
  std::vector<double> knots, values;

  double eval(double x) const;
  // Direct linear interpolation of the table, constant beyond the end knots.
  double eval_pwl(double x) const;
  std::size_t width() const { return terms.size(); }
};

// Interpolant at knots t_0 < ... < t_K written as
//   h(t_0) + sum_{j=0}^{K} c_j relu(x - t_j),
// c_0 the first slope, c_j the slope change at t_j and c_K minus the last
// slope, so h is constant outside [t_0, t_K].
UnivariateApprox relu_interpolant(std::vector<double> knots, std::vector<double> values);

// Uniform knots on [-R, R] with K segments.
UnivariateApprox relu_uniform(const std::function<double(double)>& target, double R, std::size_t K);

// Knot spacing h = 2R/K with L h <= delta, K = ceil(2RL/delta), K+1 units.
UnivariateApprox approx_univariate_relu(const std::function<double(double)>& target, double R,
                                        double L, double delta);

// Smallest uniform K whose measured grid error is <= delta (doubling, then
// bisection). Used where the Lipschitz knot rule is far too pessimistic.
UnivariateApprox approx_univariate_relu_measured(const std::function<double(double)>& target,
                                                 double R, double delta,
                                                 std::size_t max_segments = 1u << 20);

// Max |h - target| over `points` equispaced nodes of [-R, R] shifted by
// offset * spacing, plus (when with_midpoints) the segment midpoints.
double grid_error(const UnivariateApprox& h, const std::function<double(double)>& target,
                  double R, std::size_t points = 10001, double offset = 0.0,
                  bool with_midpoints = true);

// Each exp unit v_i exp(<w_i,x>) becomes v_i N_exp(<w_i,x>) with N_exp the
// ReLU approximant of exp on [-1,1] at accuracy delta (knot rule, L = e).
DepthTwoNetwork substitute_activation(const DepthTwoNetwork& exp_net, double delta);

}  // namespace radialnet
