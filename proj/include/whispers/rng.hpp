#pragma once

#include <cmath>
#include <cstdint>

namespace whispers {

// Counter-based randomness: every Monte Carlo trial owns an independent
// generator derived from (seed, trial index), so a run partitioned across any
// number of threads produces bit-identical results to the serial run. The
// generator is SplitMix64; the per-trial key is the finalizer applied to a
// combination of seed and index (two rounds, so neighbouring indices share no
// low-bit structure).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(mix(mix(seed) ^ (trial + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix_final(state_);
  }

  /// Uniform in [0, 1), 53 bits.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// +1 or -1 with equal probability.
  int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

  /// Uniform integer in [0, bound) via rejection-free scaling (bound is tiny
  /// here, bias < 2^-53 is irrelevant next to Monte Carlo noise).
  int next_below(int bound) {
    return (int)(next_double() * bound);
  }

 private:
  static std::uint64_t mix_final(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

struct McEstimate {
  double mean = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;   // sqrt(mean*(1-mean)/trials)
  std::uint64_t seed = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

inline McEstimate make_estimate(std::uint64_t errors, std::uint64_t trials,
                                std::uint64_t seed) {
  McEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = trials ? (double)errors / (double)trials : 0.0;
  e.std_error = trials ? std::sqrt(e.mean * (1.0 - e.mean) / (double)trials) : 0.0;
  return e;
}

}  // namespace whispers
