#pragma once

#include <cstdint>
#include <vector>

#include "rat.hpp"

namespace ccms2 {

// Deterministic across platforms: splitmix64 stream, explicit sampling helpers.
// std::uniform_int_distribution is implementation-defined and is avoided on purpose.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via rejection; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t limit = ~0ull - (~0ull % bound);
    std::uint64_t v;
    do { v = next_u64(); } while (v >= limit);
    return v % bound;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long next_int(long long lo, long long hi) {
    return lo + (long long)next_below((std::uint64_t)(hi - lo + 1));
  }

  // Random rational in [0,1]: denominator uniform in [1,12], numerator in [0,den].
  Rat next_unit_rat() {
    long long den = next_int(1, 12);
    long long num = next_int(0, den);
    return Rat(num, den);
  }

  std::vector<long long> next_int_vector(std::size_t len, long long lo, long long hi) {
    std::vector<long long> v(len);
    for (auto& x : v) x = next_int(lo, hi);
    return v;
  }

private:
  std::uint64_t state_;
};

// Stable derived seed for (base, stream) pairs used by the verification matrix.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  Rng r(base ^ (0xA0761D64ull + stream * 0x9E3779B97F4A7C15ull));
  return r.next_u64();
}

} // namespace ccms2
