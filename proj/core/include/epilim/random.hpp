#pragma once

#include <cstdint>

namespace epilim {

/// xorshift64* generator. Fixed published constants so instance generation
/// is reproducible across platforms and languages.
class Xorshift {
 public:
  explicit Xorshift(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1Dull;
  }

  /// Uniform in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(next_below(std::uint64_t(hi - lo + 1)));
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return double(next_u64() >> 11) * (1.0 / 9007199254740992.0); }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace epilim
