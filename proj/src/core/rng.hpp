#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace mjr {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Pure function of (master, stream, index); distinct indices within a stream
// are guaranteed distinct seeds (odd multiplier, bijective finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t s = mix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
  return mix64(s + 0xD1B54A32D192ED03ull * (index + 1));
}

// Deterministic engine with hand-rolled distributions. std::*_distribution
// implementations may differ across standard libraries; these do not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound >= 1. Rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound >= 1);
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mjr
