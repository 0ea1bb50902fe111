#pragma once

#include <cstdint>

namespace dimcov {

// Deterministic, splittable random source.
//
// Draws come from a splitmix64 stream; split() derives an independent child
// stream from the parent's key and a caller-chosen tag without disturbing the
// parent's draw position.  Two sources with different (key, tag) lineages
// produce unrelated sequences, which is what lets every RR set own its own
// stream: augmenting sets in a different order never perturbs the randomness
// any single set consumes.
class RandomSource {
 public:
  RandomSource() : RandomSource(0) {}

  explicit RandomSource(std::uint64_t seed) {
    key_ = mix(seed + kGolden);
    state_ = key_;
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform in [0, n).  n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Child stream keyed by (parent key, a, b).  Pure: does not advance *this.
  RandomSource split(std::uint64_t a, std::uint64_t b = 0) const {
    RandomSource child;
    std::uint64_t h = mix(key_ ^ mix(a + kGolden));
    h = mix(h ^ mix(b + kWeyl));
    child.key_ = h;
    child.state_ = h;
    return child;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kWeyl = 0xbf58476d1ce4e5b9ULL;

  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  std::uint64_t key_ = 0;
};

}  // namespace dimcov
