#pragma once

#include <cstdint>
#include <random>

namespace nuspread {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Draw source for one RngStream. Only the raw 64-bit engine output is used, never the
/// implementation-defined std distributions, so draws are identical across platforms.
class Rng {
 public:
  explicit Rng(RngStream s);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform in {0, ..., n-1}; n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Number of failures before the first success of a Bernoulli(p) sequence, 0 < p < 1.
  std::uint64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nuspread
