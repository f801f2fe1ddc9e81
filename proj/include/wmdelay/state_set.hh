#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace wmdelay {

/// Fixed-width bit vector indexed by state order. Occurrence sets dominate the
/// translation and the lasso oracles, so equality/hashing must be cheap.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(uint32_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  static StateSet of(uint32_t nbits, std::initializer_list<uint32_t> bits) {
    StateSet s(nbits);
    for (uint32_t b : bits) s.insert(b);
    return s;
  }

  uint32_t universe() const { return nbits_; }

  void insert(uint32_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }

  bool test(uint32_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t x : w_) c += static_cast<uint32_t>(__builtin_popcountll(x));
    return c;
  }

  bool subset_of(const StateSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  StateSet& operator|=(const StateSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  bool operator==(const StateSet&) const = default;

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ nbits_;
    for (uint64_t x : w_) {
      h ^= x;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return h;
  }

  std::vector<uint32_t> elements() const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < nbits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  uint32_t nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct StateSetHash {
  size_t operator()(const StateSet& s) const { return static_cast<size_t>(s.hash()); }
};

}  // namespace wmdelay
