#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "radialnet/errors.hpp"
#include "radialnet/network.hpp"
#include "radialnet/profile.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/verify.hpp"

// Fourier convention throughout: f(x) = int exp(i<x,w>) F(w) dw, so
//   F(w) = (2 pi)^-d int f(x) exp(-i<x,w>) dx.
// For radial f(x) = h(|x|) and rho = |w|:
//   d = 1:  F(rho) = (1/pi) int_0^inf h(r) cos(rho r) dr
//   d = 3:  F(rho) = 1/(2 pi^2 rho) int_0^inf r h(r) sin(rho r) dr
// Gaussian smoothing g = h * N(0, v I) multiplies F by exp(-v rho^2 / 2).
// Even d needs Bessel kernels and is not supported.

namespace radialnet {

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double a, double b, double err)
      : Error(what), a_(a), b_(b), err_(err) {}
  double a() const { return a_; }
  double b() const { return b_; }
  double error() const { return err_; }

 private:
  double a_, b_, err_;
};

struct QuadratureConfig {
  double tol = 1e-11;   // relative, per subinterval
  int max_depth = 18;
};

// The shifted base h(r) = phi(r) - phi(0) on [0,1], continued by the linear
// ramp h(1)(2 - r) on [1,2] and 0 beyond, so h stays Lipschitz on R^d.
struct SmoothedProfile {
  RadialProfile base;
  int d = 1;
  double epsilon = 0.0;
  double variance = 0.0;  // eps^2 / (4d)
  double shift = 0.0;     // phi(0)
  QuadratureConfig quad;

  double base_eval(double r) const;  // h(r), r >= 0
  double eval(double r) const;       // g(r) by quadrature

  // Table of g on [0,1] under a cubic B-spline; profile of
  // g + phi(0), the function a network should match.
  RadialProfile tabulated(int points = 4097) const;
  bool is_zero() const;
};

SmoothedProfile mollify(const RadialProfile& profile, int d, double epsilon,
                        QuadratureConfig quad = {});

// Generic radial transform of a function supported in [0, support].
double radial_transform(int d, double rho, const std::function<double(double)>& h,
                        double support, const std::vector<double>& breaks,
                        const QuadratureConfig& quad);

enum class FourierPath { Direct, Decay };

// |g^|(rho). Direct transforms g itself (nested quadrature); Decay transforms
// h and multiplies by exp(-v rho^2/2).
std::vector<double> radial_fourier(const SmoothedProfile& g, const std::vector<double>& rho,
                                   FourierPath path = FourierPath::Decay);
double fourier_value(const SmoothedProfile& g, double rho, FourierPath path);

// E|u|_1^2 for u uniform on S^{d-1}: 1 + 2(d-1)/pi.
double sphere_l1_moment(int d);
double sphere_l1_moment_mc(int d, std::size_t samples, std::uint64_t seed);
double sphere_area(int d);

// Upper bound obtained by bounding |h^| with the ball volume.
double v_moment_bound(int d, double epsilon);

struct FourierReport {
  int d = 1;
  double epsilon = 0.0;
  double variance = 0.0;
  double v_moment = 0.0;
  double quad_error = 0.0;
  double radial_integral = 0.0;
  double cutoff = 0.0;
  double tail_ratio = 0.0;  // integrand near cutoff / peak
  double sphere_factor = 1.0;
  double sphere_factor_mc = 1.0;
  std::size_t mc_samples = 0;
  double v_bound = 0.0;

  nlohmann::json to_json() const;
};

struct MomentOptions {
  std::size_t mc_samples = 200000;
  std::uint64_t mc_seed = 0x5f3759df;
  double tail_decay = 1e-12;
};

FourierReport v_moment(const SmoothedProfile& g, const MomentOptions& opt = {});

// Radial law rho ~ rho^{d+1} |g^(rho)| on [0, cutoff], drawn by rejection
// against a uniform envelope, then a per-bin envelope if acceptance is poor.
class RadialSampler {
 public:
  RadialSampler(const SmoothedProfile& g, double cutoff, int table_points = 4096,
                double min_efficiency = 0.02);
  double draw(SeededRng& rng);
  double cdf(double rho) const;
  double density(double rho) const;  // unnormalized, linear in the table
  double efficiency() const { return efficiency_; }
  bool widened() const { return widened_; }

 private:
  double cutoff_ = 0.0;
  double h_ = 0.0;
  std::vector<double> table_;
  std::vector<double> cum_;
  std::vector<double> bin_max_;
  int bins_ = 1;
  double efficiency_ = 0.0;
  bool widened_ = false;
};

struct RidgeFeature {
  std::vector<double> a;  // |a|_1 = 1
  double t = 0.0;         // in [-1, 1]
  double sign = 1.0;      // unit is relu(sign (<a,x> - t))
};

std::vector<RidgeFeature> sample_ridge_features(const SmoothedProfile& g, RadialSampler& sampler,
                                                std::size_t n, SeededRng& rng,
                                                std::vector<double>* rhos = nullptr);

struct FourierBuild {
  DepthTwoNetwork network;
  ErrorReport report;    // against phi on the ball
  double fit_error = 0;  // sup against g + phi(0)
  double mollify_gap = 0;
  double sampler_efficiency = 0;
  FourierReport fourier;
  bool passed = false;
};

struct FourierOptions {
  VerifyBudget budget{};
  int table_points = 4097;
  std::size_t fit_min_rows = 2048;
  int fit_rows_per_col = 32;
  std::size_t fit_max_rows = 1u << 15;
  double fit_ridge = 1e-9;  // lambda in mean residual^2 + lambda |v|^2
};

// n sampled ridge units plus relu(x_1), relu(-x_1); output weights by least
// squares on uniform ball points.
FourierBuild build_fourier_network(const RadialProfile& profile, int d, double epsilon,
                                   std::size_t n, SeededRng& rng,
                                   const FourierOptions& opt = {});

struct FourierGrowth {
  std::size_t n_start = 32;
  std::size_t n_max = 1024;
};

// Doubles n until the verified sup error is at most epsilon.
FourierBuild grow_fourier_network(const RadialProfile& profile, int d, double epsilon,
                                  SeededRng& rng, const FourierGrowth& growth = {},
                                  const FourierOptions& opt = {});

// max |g(r) - h(r)| over `points` equispaced radii in [0,1].
double mollification_gap(const SmoothedProfile& g, int points = 50);

}  // namespace radialnet
