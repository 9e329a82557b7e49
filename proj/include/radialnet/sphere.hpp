#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "radialnet/rng.hpp"

namespace radialnet {

// Normalized i.i.d. Box-Muller Gaussians; a (practically impossible) zero
// draw is redrawn.
std::vector<double> sample_unit_sphere(int d, SeededRng& rng);
void sample_unit_sphere_into(std::span<double> out, SeededRng& rng);
// Uniform on the ball: sphere direction times u^{1/d}.
void sample_ball_into(std::span<double> out, SeededRng& rng);

// I_x(a, b) by the Lentz continued fraction, switching to the reflected
// fraction for x past the mean so it converges fast (abs error ~1e-14).
double regularized_incomplete_beta(double a, double b, double x);
// Bisection inverse of I_x(a,b).
double beta_inverse_cdf(double a, double b, double p);

// Kolmogorov-Smirnov statistic of samples against a continuous CDF. Sorts
// the input in place.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);
// Asymptotic KS critical value at level alpha for n samples.
double ks_critical(double alpha, std::size_t n);

// KS statistic of X = <W,x>/(2r) + 1/2 over W uniform on the sphere against
// Beta((d-1)/2, (d-1)/2).
double beta_law_check(int d, std::span<const double> x, std::size_t n_samples, SeededRng& rng);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Eigen::MatrixXd random_orthogonal(int d, SeededRng& rng);

}  // namespace radialnet
