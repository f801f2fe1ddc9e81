#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "wmdelay/error.hh"
#include "wmdelay/gadgets.hh"

namespace wmdelay {

namespace {

std::string sslot(const char* prefix, uint32_t k, uint32_t b) {
  return std::string(prefix) + "<" + std::to_string(k) + "/" + std::to_string(b) + ">";
}

std::string ares(uint32_t k, uint32_t r, uint32_t c) {
  return "Ares<" + std::to_string(k) + "/" + std::to_string(r) + "/" + std::to_string(c) + ">";
}

bool is_bit(const std::string& t) { return t == "0" || t == "1"; }

}  // namespace

std::vector<std::string> thm41_input_tokens() { return {"0", "1", "#"}; }
std::vector<std::string> thm41_output_tokens() { return {"0", "1", "m", "#"}; }

Automaton thm41_automaton(uint32_t n, const Thm41Options& opt) {
  if (n < 1 || n > 16)
    throw DomainError("thm41_automaton supports 1 <= n <= 16");

  Automaton::Builder b;
  b.add_state("init");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(sslot("S", k, v));
  for (uint32_t i = 0; i < n; ++i) b.add_state("W" + std::to_string(i));
  b.add_state("Wsep");
  b.add_state("M1pre");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(sslot("M1", k, v));
  b.add_state("Apre");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t r = 0; r < 2; ++r)
      for (uint32_t c = 0; c < 2; ++c) {
        if (k == 0 && r == 1 && c == 1) continue;  // unreachable from carry 0
        b.add_state(ares(k, r, c));
      }
  b.add_state("M2pre");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(sslot("M2", k, v));
  for (uint32_t i = 0; i < n; ++i) b.add_state("T" + std::to_string(i));
  b.add_state("Tsep");
  b.add_state("q_acc");
  b.add_state("q_rej");

  std::vector<Letter> alpha;
  for (const std::string& x : thm41_input_tokens())
    for (const std::string& y : thm41_output_tokens()) alpha.push_back(Letter::pair(x, y));
  b.alphabet(alpha);
  b.initial("init");

  // One call per (state, block position): input violations win (the automaton
  // accepts), then output violations (it rejects), then the advance map.
  // allow_mark covers the two-mark budget; the target of a legal mark /
  // non-mark separator is supplied by the caller.
  auto wire = [&](const std::string& src, bool sep_position, bool allow_mark,
                  const std::string& mark_target,
                  const std::function<std::string(uint32_t, uint32_t)>& bit_target,
                  const std::string& plain_sep_target) {
    for (const Letter& l : alpha) {
      const std::string& a = l.input();
      const std::string& y = l.output();
      bool in_ok = sep_position ? a == "#" : is_bit(a);
      bool out_ok = sep_position ? (y == "#" || (y == "m" && allow_mark)) : is_bit(y);
      std::string dst;
      if (!in_ok)
        dst = "q_acc";
      else if (!out_ok)
        dst = "q_rej";
      else if (sep_position)
        dst = (y == "m") ? mark_target : plain_sep_target;
      else
        dst = bit_target(uint32_t(a[0] - '0'), uint32_t(y[0] - '0'));
      b.transition(src, l, dst);
    }
  };
  auto no_bits = [](uint32_t, uint32_t) -> std::string { return ""; };

  wire("init", false, false, "", [&](uint32_t, uint32_t y) { return sslot("S", 0, y); }, "");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) {
      if (k + 1 < n)
        wire(sslot("S", k, v), false, false, "",
             [&, k](uint32_t, uint32_t y) { return sslot("S", k + 1, y); }, "");
      else
        wire(sslot("S", k, v), true, true, "M1pre", no_bits, "W0");
    }
  for (uint32_t i = 0; i < n; ++i)
    wire("W" + std::to_string(i), false, false, "",
         [&, i](uint32_t, uint32_t) { return i + 1 < n ? "W" + std::to_string(i + 1) : "Wsep"; },
         "");
  wire("Wsep", true, true, "M1pre", no_bits, "W0");

  wire("M1pre", false, false, "", [&](uint32_t x, uint32_t) { return sslot("M1", 0, x); }, "");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) {
      if (k + 1 < n)
        wire(sslot("M1", k, v), false, false, "",
             [&, k](uint32_t x, uint32_t) { return sslot("M1", k + 1, x); }, "");
      else
        wire(sslot("M1", k, v), true, true, "M2pre", no_bits, "Apre");
    }

  wire("Apre", false, false, "",
       [&](uint32_t x, uint32_t y) { return ares(0, (x + y) % 2, (x + y) / 2); }, "");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t r = 0; r < 2; ++r)
      for (uint32_t c = 0; c < 2; ++c) {
        if (k == 0 && r == 1 && c == 1) continue;
        if (k + 1 < n)
          wire(ares(k, r, c), false, false, "",
               [&, k, c](uint32_t x, uint32_t y) {
                 uint32_t s = x + y + c;
                 return ares(k + 1, s % 2, s / 2);
               },
               "");
        else
          wire(ares(k, r, c), true, true, "M2pre", no_bits, "Apre");
      }

  wire("M2pre", false, false, "", [&](uint32_t x, uint32_t) { return sslot("M2", 0, x); }, "");
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) {
      if (k + 1 < n)
        wire(sslot("M2", k, v), false, false, "",
             [&, k](uint32_t x, uint32_t) { return sslot("M2", k + 1, x); }, "");
      else
        wire(sslot("M2", k, v), true, false, "", no_bits, "T0");
    }
  for (uint32_t i = 0; i < n; ++i)
    wire("T" + std::to_string(i), false, false, "",
         [&, i](uint32_t, uint32_t) { return i + 1 < n ? "T" + std::to_string(i + 1) : "Tsep"; },
         "");
  wire("Tsep", true, false, "", no_bits, "T0");

  for (const Letter& l : alpha) {
    b.transition("q_acc", l, "q_acc");
    b.transition("q_rej", l, "q_rej");
  }

  // phi = !q_rej & (q_acc | psi) with psi comparing the stored numbers.
  std::vector<Formula> clauses;
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t v = 0; v < 2; ++v) {
      std::vector<Formula> rhs{Formula::var(sslot("M1", k, v)), Formula::var(sslot("M2", k, v))};
      for (uint32_t c = 0; c < 2; ++c) {
        if (k == 0 && (1 - v) == 1 && c == 1) continue;  // omitted state
        rhs.push_back(Formula::negate(Formula::var(ares(k, 1 - v, c))));
      }
      clauses.push_back(
          Formula::implies(Formula::var(sslot("S", k, v)), Formula::conj_all(rhs)));
    }
  if (opt.forbid_final_carry) {
    for (uint32_t r = 0; r < 2; ++r) {
      if (n == 1 && r == 1) continue;  // Ares<0/1/1> does not exist
      clauses.push_back(Formula::negate(Formula::var(ares(n - 1, r, 1))));
    }
  }
  Formula psi = Formula::conj_all(clauses);
  Formula phi = Formula::conj(Formula::negate(Formula::var("q_rej")),
                              Formula::disj(Formula::var("q_acc"), psi));
  b.acceptance(WeakMullerFormula{phi});
  return b.build();
}

// ---------------------------------------------------------------------------
// Semantic oracle: prose-level case analysis on the ultimately periodic word.

bool thm41_semantic_accepts(uint32_t n, const Lasso& lasso, const Thm41Options& opt) {
  if (n < 1) throw DomainError("thm41_semantic_accepts requires n >= 1");
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  size_t period = n + 1;
  size_t ulen = lasso.spoke.size(), vlen = lasso.cycle.size();
  // Long enough that positional mismatches (period lcm(|v|, n+1) after the
  // spoke), a third mark from the cycle, and the blocks around spoke-resident
  // marks all fall inside the scan.
  size_t horizon = ulen + vlen * period + 3 * vlen + 3 * period + 2;

  auto letter_at = [&](size_t i) -> const Letter& {
    return i < ulen ? lasso.spoke[i] : lasso.cycle[(i - ulen) % vlen];
  };

  size_t ia = horizon, ib = horizon;  // first violations; horizon = "never"
  size_t marks_seen = 0;
  std::vector<size_t> mark_positions;
  for (size_t i = 0; i < horizon; ++i) {
    const Letter& l = letter_at(i);
    if (!l.is_pair()) throw ValidationError("thm41 lasso letters must be pairs");
    const std::string& a = l.input();
    const std::string& y = l.output();
    bool sep = (i % period) == n;
    if (ia == horizon) {
      bool in_ok = sep ? a == "#" : is_bit(a);
      if (!in_ok) ia = i;
    }
    if (ib == horizon) {
      bool out_ok = sep ? (y == "#" || y == "m") : is_bit(y);
      if (!out_ok) {
        ib = i;
      } else if (sep && y == "m") {
        ++marks_seen;
        if (marks_seen <= 2) mark_positions.push_back(i);
        if (marks_seen == 3) ib = i;  // a third mark is an output format error
      }
    }
    if (ia < horizon && ib < horizon) break;
  }

  // The player who first leaves the encoding format loses; on the same
  // position the input side is charged (the output trails by one move).
  if (ia < horizon || ib < horizon) return ia <= ib;

  if (marks_seen != 2) return false;

  auto block_value = [&](size_t block, bool input_side) -> uint64_t {
    uint64_t val = 0;
    for (uint32_t k = 0; k < n; ++k) {
      const Letter& l = letter_at(block * period + k);
      const std::string& t = input_side ? l.input() : l.output();
      val |= uint64_t(t[0] - '0') << k;  // least significant bit leftmost
    }
    return val;
  };

  uint64_t y0 = block_value(0, false);
  size_t j = mark_positions[0] / period + 1;   // separator marks the next block
  size_t j2 = mark_positions[1] / period + 1;
  if (block_value(j, true) != y0 || block_value(j2, true) != y0) return false;
  uint64_t modulus = uint64_t(1) << n;
  for (size_t i = j + 1; i < j2; ++i) {
    uint64_t sum = block_value(i, true) + block_value(i, false);
    if (opt.forbid_final_carry ? sum != y0 : (sum % modulus) != y0) return false;
  }
  return true;
}

}  // namespace wmdelay
