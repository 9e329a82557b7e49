#include "radialnet/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace radialnet {

namespace {
constexpr std::size_t kLanes = 8;
constexpr std::size_t kUnitBlock = 512;
constexpr std::size_t kTile = 8;
}  // namespace

PackedNetwork::PackedNetwork(const DepthTwoNetwork& net)
    : dim_(net.dim), width_(net.width()), act_(net.activation), b0_(net.output_bias) {
  net.validate();
  padded_ = (width_ + kLanes - 1) / kLanes * kLanes;
  wt_.assign(static_cast<std::size_t>(dim_) * padded_, 0.0);
  b_.assign(padded_, 0.0);
  v_.assign(padded_, 0.0);
  for (std::size_t i = 0; i < width_; ++i) {
    for (int k = 0; k < dim_; ++k) wt_[k * padded_ + i] = net.hidden[i].weight[k];
    b_[i] = net.hidden[i].bias;
    v_[i] = net.output_weights[i];
  }
}

void PackedNetwork::eval_tile(const double* pts, std::size_t count, double* out,
                              double* z) const {
  double acc[kTile][kLanes] = {};
  const std::size_t d = static_cast<std::size_t>(dim_);
  for (std::size_t u0 = 0; u0 < padded_; u0 += kUnitBlock) {
    const std::size_t len = std::min(kUnitBlock, padded_ - u0);
    for (std::size_t p = 0; p < count; ++p) {
      const double* x = pts + p * d;
      const double* bb = b_.data() + u0;
      for (std::size_t u = 0; u < len; ++u) z[u] = bb[u];
      for (std::size_t k = 0; k < d; ++k) {
        const double xk = x[k];
        const double* w = wt_.data() + k * padded_ + u0;
#pragma omp simd
        for (std::size_t u = 0; u < len; ++u) z[u] += w[u] * xk;
      }
      if (act_ == Activation::Exp) {
#pragma omp simd
        for (std::size_t u = 0; u < len; ++u) z[u] = vexp(z[u]);
      } else {
#pragma omp simd
        for (std::size_t u = 0; u < len; ++u) z[u] = z[u] > 0.0 ? z[u] : 0.0;
      }
      const double* vv = v_.data() + u0;
      double* a = acc[p];
      for (std::size_t j = 0; j < len; j += kLanes)
        for (std::size_t l = 0; l < kLanes; ++l) a[l] += vv[j + l] * z[j + l];
    }
  }
  for (std::size_t p = 0; p < count; ++p) {
    const double* a = acc[p];
    double s = ((a[0] + a[1]) + (a[2] + a[3])) + ((a[4] + a[5]) + (a[6] + a[7]));
    out[p] = b0_ + s;
  }
}

void PackedNetwork::check(std::span<const double> points, std::span<double> out) const {
  if (points.size() != out.size() * static_cast<std::size_t>(dim_))
    throw std::invalid_argument("point buffer does not match " + std::to_string(out.size()) +
                                " points of dimension " + std::to_string(dim_));
}

double PackedNetwork::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("input has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(dim_));
  double z[kUnitBlock];
  double out;
  eval_tile(x.data(), 1, &out, z);
  return out;
}

void PackedNetwork::eval_batch(std::span<const double> points, std::span<double> out) const {
  check(points, out);
  const std::size_t n = out.size();
  const std::size_t tiles = (n + kTile - 1) / kTile;
  const std::size_t d = static_cast<std::size_t>(dim_);
#pragma omp parallel
  {
    double z[kUnitBlock];
#pragma omp for schedule(static)
    for (std::size_t t = 0; t < tiles; ++t) {
      const std::size_t p0 = t * kTile;
      eval_tile(points.data() + p0 * d, std::min(kTile, n - p0), out.data() + p0, z);
    }
  }
}

void PackedNetwork::eval_batch_serial(std::span<const double> points, std::span<double> out) const {
  check(points, out);
  const std::size_t n = out.size();
  const std::size_t d = static_cast<std::size_t>(dim_);
  double z[kUnitBlock];
  for (std::size_t p0 = 0; p0 < n; p0 += kTile)
    eval_tile(points.data() + p0 * d, std::min(kTile, n - p0), out.data() + p0, z);
}

void eval_batch_reference(const DepthTwoNetwork& net, std::span<const double> points,
                          std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(net.dim);
  if (points.size() != out.size() * d) throw std::invalid_argument("point buffer size mismatch");
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = eval_network(net, points.subspan(p * d, d));
}

}  // namespace radialnet
