#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "radialnet/network.hpp"

namespace radialnet {

// Branch-free exp used inside the vectorized unit loops. Cody-Waite
// reduction, degree-13 Taylor polynomial on |r| <= ln2/2, exponent built by
// bit manipulation. Arguments are clamped to [-700, 700]. ~1 ulp.
inline double vexp(double x) {
  x = x < -700.0 ? -700.0 : x;
  x = x > 700.0 ? 700.0 : x;
  constexpr double log2e = 0x1.71547652b82fep0;
  constexpr double shifter = 0x1.8p52;
  constexpr double ln2hi = 0x1.62e42fefa39efp-1;
  constexpr double ln2lo = 0x1.abc9e3b39803fp-56;
  double kd = x * log2e + shifter;
  std::uint64_t ki = std::bit_cast<std::uint64_t>(kd);
  kd -= shifter;
  double r = (x - kd * ln2hi) - kd * ln2lo;
  double p = 1.0 / 6227020800.0;
  p = p * r + 1.0 / 479001600.0;
  p = p * r + 1.0 / 39916800.0;
  p = p * r + 1.0 / 3628800.0;
  p = p * r + 1.0 / 362880.0;
  p = p * r + 1.0 / 40320.0;
  p = p * r + 1.0 / 5040.0;
  p = p * r + 1.0 / 720.0;
  p = p * r + 1.0 / 120.0;
  p = p * r + 1.0 / 24.0;
  p = p * r + 1.0 / 6.0;
  p = p * r + 0.5;
  p = p * r + 1.0;
  p = p * r + 1.0;
  std::uint64_t bits = (ki + 1023) << 52;
  return p * std::bit_cast<double>(bits);
}

// Network repacked for batched evaluation: weights stored dimension-major
// (d x padded width) so the unit loop is contiguous, width padded to a
// multiple of 8 with inert units. Every point goes through the same
// fixed-order arithmetic no matter how it is batched, so eval(x) and
// eval_batch give bit-identical values.
class PackedNetwork {
 public:
  explicit PackedNetwork(const DepthTwoNetwork& net);

  int dim() const { return dim_; }
  std::size_t width() const { return width_; }
  Activation activation() const { return act_; }

  double eval(std::span<const double> x) const;
  // points: row-major n x dim, out: n values. OpenMP over point tiles.
  void eval_batch(std::span<const double> points, std::span<double> out) const;
  // Same arithmetic on the calling thread only.
  void eval_batch_serial(std::span<const double> points, std::span<double> out) const;

 private:
  void eval_tile(const double* pts, std::size_t count, double* out, double* scratch) const;
  void check(std::span<const double> points, std::span<double> out) const;

  int dim_ = 0;
  std::size_t width_ = 0, padded_ = 0;
  Activation act_ = Activation::ReLU;
  std::vector<double> wt_, b_, v_;
  double b0_ = 0.0;
};

// Naive reference: eval_network once per point, single thread.
void eval_batch_reference(const DepthTwoNetwork& net, std::span<const double> points,
                          std::span<double> out);

}  // namespace radialnet
