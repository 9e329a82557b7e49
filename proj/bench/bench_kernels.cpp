#include <benchmark/benchmark.h>

#include <vector>

#include "radialnet/kernels.hpp"
#include "radialnet/rng.hpp"
#include "radialnet/sphere.hpp"

using namespace radialnet;

namespace {

constexpr std::size_t kPoints = 4096;

DepthTwoNetwork make_net(int d, std::size_t width, Activation act) {
  SeededRng r(42);
  DepthTwoNetwork net;
  net.dim = d;
  net.activation = act;
  for (std::size_t i = 0; i < width; ++i)
    net.add_unit(sample_unit_sphere(d, r), 0.2 * r.normal(), 1.0 / static_cast<double>(width));
  return net;
}

std::vector<double> make_points(int d) {
  SeededRng r(7);
  std::vector<double> pts(kPoints * d);
  for (std::size_t i = 0; i < kPoints; ++i) sample_ball_into(std::span<double>(pts.data() + i * d, d), r);
  return pts;
}

Activation act_of(const benchmark::State& s) { return s.range(2) ? Activation::Exp : Activation::ReLU; }

void set_counters(benchmark::State& s) {
  s.SetItemsProcessed(static_cast<int64_t>(s.iterations()) * kPoints);
  s.counters["unit_evals/s"] = benchmark::Counter(
      static_cast<double>(s.iterations()) * kPoints * s.range(1), benchmark::Counter::kIsRate);
}

void BM_Batch(benchmark::State& s) {
  const int d = static_cast<int>(s.range(0));
  const PackedNetwork net(make_net(d, s.range(1), act_of(s)));
  const auto pts = make_points(d);
  std::vector<double> out(kPoints);
  for (auto _ : s) {
    net.eval_batch(pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(s);
}

void BM_BatchSerial(benchmark::State& s) {
  const int d = static_cast<int>(s.range(0));
  const PackedNetwork net(make_net(d, s.range(1), act_of(s)));
  const auto pts = make_points(d);
  std::vector<double> out(kPoints);
  for (auto _ : s) {
    net.eval_batch_serial(pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(s);
}

void BM_Reference(benchmark::State& s) {
  const int d = static_cast<int>(s.range(0));
  const auto net = make_net(d, s.range(1), act_of(s));
  const auto pts = make_points(d);
  std::vector<double> out(kPoints);
  for (auto _ : s) {
    eval_batch_reference(net, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_counters(s);
}

// d, width, exp?
void args(benchmark::internal::Benchmark* b) {
  b->ArgNames({"d", "width", "exp"});
  for (int act : {0, 1})
    for (int d : {3, 10, 50})
      for (int w : {144, 3600}) b->Args({d, w, act});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Batch)->Apply(args)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Apply(args);
BENCHMARK(BM_Reference)->Apply(args);

BENCHMARK_MAIN();
