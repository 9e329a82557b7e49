#pragma once

#include <array>
#include <cstdint>

namespace radialnet {

std::uint64_t splitmix64(std::uint64_t& state);
// Sub-seed for worker/cell/sample `index`: splitmix of seed XOR hashed index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// xoshiro256** seeded through splitmix64. Uniforms and normals are generated
// from the raw 64-bit stream with fixed arithmetic (no <random>
// distributions), so streams match across compilers and platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  double normal();        // Box-Muller, second variate cached
  std::uint64_t below(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }
  SeededRng derive(std::uint64_t index) const { return SeededRng(derive_seed(seed_, index)); }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace radialnet
