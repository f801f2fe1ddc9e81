#pragma once

#include <cstdint>
#include <vector>

namespace wmdelay {

/// Small deterministic RNG (splitmix64). Unlike std distributions, its output
/// stream is identical across platforms, which the reproducibility contract of
/// the CLI relies on.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t below(uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  bool flip() { return next() & 1; }

  template <typename T>
  const T& choice(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace wmdelay
