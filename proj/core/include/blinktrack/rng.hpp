#pragma once

#include <cstdint>
#include <random>

namespace blinktrack {

/// Seeded RNG with hand-rolled transforms so that identical seeds give
/// bit-identical streams on every platform (std distributions are
/// implementation-defined; the mt19937_64 word stream is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (two words per draw, no caching).
  double gaussian();

  /// Exact Poisson draw by uniform products; large means split recursively.
  int poisson(double mean);

 private:
  std::mt19937_64 gen_;
};

}  // namespace blinktrack
