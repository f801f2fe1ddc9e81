#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wmdelay {

/// Finite word over the ranked alphabet {0, ..., n-1}.
struct RankedWord {
  std::vector<uint8_t> letters;
  uint32_t n;  // alphabet size, >= 1

  static RankedWord from_digits(const std::string& digits, uint32_t n);
};

struct JPair {
  size_t p, p2;  // positions p < p2
};

struct JPairWitness {
  uint32_t j;
  size_t p, p2;
};

/// Leftmost pair of positions p < p' with w(p) = w(p') = j and w(q) < j
/// strictly in between ("leftmost": smallest p').
std::optional<JPair> contains_bad_jpair(const RankedWord& w, uint32_t j);

/// Some bad j-pair over all j, canonicalized: smallest right endpoint wins,
/// ties broken by smaller j.
std::optional<JPairWitness> first_bad_jpair(const RankedWord& w);

/// Word of length exactly 2^n - 1 over {0,...,n-1} without any bad j-pair,
/// built recursively as w_1 = "0", w_n = w_{n-1} . (n-1) . w_{n-1}.
RankedWord jpair_free_word(uint32_t n);

struct Prop24Mode {
  bool exhaustive = false;
  uint64_t samples = 0;
  uint64_t seed = 1;
};

struct Prop24Report {
  uint32_t n;
  bool exhaustive;
  uint64_t words_checked;
  uint64_t words_with_pair;
  size_t free_word_length;
  bool free_word_clean;
  double millis;
};

/// Checks both bullets of the bad-j-pair bound at parameter n: (i) every
/// checked word of length 2^n contains a bad j-pair, (ii) the constructed
/// witness word of length 2^n - 1 contains none. Exhaustive mode enumerates
/// all n^(2^n) words and is refused for n > 3.
Prop24Report verify_prop24(uint32_t n, const Prop24Mode& mode);

}  // namespace wmdelay
