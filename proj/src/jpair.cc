#include "wmdelay/jpair.hh"

#include <chrono>

#include "wmdelay/error.hh"
#include "wmdelay/rng.hh"

namespace wmdelay {

RankedWord RankedWord::from_digits(const std::string& digits, uint32_t n) {
  RankedWord w{{}, n};
  w.letters.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9' || static_cast<uint32_t>(c - '0') >= n)
      throw ValidationError(std::string("ranked word digit out of range: '") + c + "'");
    w.letters.push_back(static_cast<uint8_t>(c - '0'));
  }
  return w;
}

std::optional<JPair> contains_bad_jpair(const RankedWord& w, uint32_t j) {
  if (j >= w.n) throw DomainError("bad j-pair query: j out of range");
  // prev is the latest j-position still connected to the scan front by
  // letters < j only.
  std::ptrdiff_t prev = -1;
  for (size_t q = 0; q < w.letters.size(); ++q) {
    uint32_t c = w.letters[q];
    if (c == j) {
      if (prev >= 0) return JPair{static_cast<size_t>(prev), q};
      prev = static_cast<std::ptrdiff_t>(q);
    } else if (c > j) {
      prev = -1;
    }
  }
  return std::nullopt;
}

std::optional<JPairWitness> first_bad_jpair(const RankedWord& w) {
  // Single left-to-right pass; per letter j we keep the candidate left
  // endpoint. The first completed pair has the smallest right endpoint, and
  // scanning j in increasing order breaks ties by smaller j.
  std::vector<std::ptrdiff_t> prev(w.n, -1);
  for (size_t q = 0; q < w.letters.size(); ++q) {
    uint32_t c = w.letters[q];
    if (prev[c] >= 0)
      return JPairWitness{c, static_cast<size_t>(prev[c]), q};
    prev[c] = static_cast<std::ptrdiff_t>(q);
    for (uint32_t j = 0; j < c; ++j) prev[j] = -1;
  }
  return std::nullopt;
}

RankedWord jpair_free_word(uint32_t n) {
  if (n < 1) throw DomainError("jpair_free_word requires n >= 1");
  if (n > 24) throw DomainError("jpair_free_word: 2^n - 1 letters infeasible for n > 24");
  RankedWord w{{}, n};
  w.letters.reserve((size_t(1) << n) - 1);
  w.letters.push_back(0);
  for (uint32_t k = 1; k < n; ++k) {
    size_t len = w.letters.size();
    w.letters.push_back(static_cast<uint8_t>(k));
    for (size_t i = 0; i < len; ++i) w.letters.push_back(w.letters[i]);
  }
  return w;
}

Prop24Report verify_prop24(uint32_t n, const Prop24Mode& mode) {
  if (n < 1) throw DomainError("verify_prop24 requires n >= 1");
  auto t0 = std::chrono::steady_clock::now();
  Prop24Report rep{n, mode.exhaustive, 0, 0, 0, false, 0.0};
  size_t len = size_t(1) << n;

  if (mode.exhaustive) {
    if (n > 3)
      throw DomainError("exhaustive verification is refused for n > 3: " +
                        std::to_string(n) + "^(2^" + std::to_string(n) +
                        ") words is not desk scale");
    RankedWord w{std::vector<uint8_t>(len, 0), n};
    for (;;) {
      ++rep.words_checked;
      if (first_bad_jpair(w)) ++rep.words_with_pair;
      // Odometer increment over the word space.
      size_t i = 0;
      while (i < len && ++w.letters[i] == n) w.letters[i++] = 0;
      if (i == len) break;
    }
  } else {
    Rng rng(mode.seed);
    RankedWord w{std::vector<uint8_t>(len, 0), n};
    for (uint64_t s = 0; s < mode.samples; ++s) {
      for (size_t i = 0; i < len; ++i) w.letters[i] = static_cast<uint8_t>(rng.below(n));
      ++rep.words_checked;
      if (first_bad_jpair(w)) ++rep.words_with_pair;
    }
  }

  RankedWord free = jpair_free_word(n);
  rep.free_word_length = free.letters.size();
  rep.free_word_clean = !first_bad_jpair(free).has_value();

  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
  return rep;
}

}  // namespace wmdelay
