#pragma once

#include <cstdint>

namespace sqcodes {

// Small deterministic PRNG (splitmix64).  We avoid <random> distributions on
// purpose: their output is implementation-defined, and experiment reports
// must be byte-identical across platforms and across worker counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; unbiased for any n >= 1.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  double unit_double() {  // [0,1), 53-bit resolution
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Independent stream for one trial.  Deriving the state from (seed, index)
// instead of splitting one sequential stream keeps results independent of
// how trials are scheduled across workers.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  return Rng(mix64(master_seed ^ 0x5851f42d4c957f2dULL) ^ mix64(trial_index + 1));
}

}  // namespace sqcodes
