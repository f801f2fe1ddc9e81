#include "wmdelay/gadgets.hh"

#include <algorithm>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

std::string slot(const std::string& prefix, uint32_t i, uint32_t b) {
  return prefix + "<" + std::to_string(i) + "/" + std::to_string(b) + ">";
}

std::vector<Letter> bit_alphabet() {
  return {Letter::plain("0"), Letter::plain("1")};
}

std::vector<Letter> bit_pair_alphabet() {
  std::vector<Letter> out;
  for (const char* x : {"0", "1"})
    for (const char* y : {"0", "1"}) out.push_back(Letter::pair(x, y));
  return out;
}

}  // namespace

Automaton bit_store(uint32_t n) {
  if (n < 1) throw DomainError("bit_store requires n >= 1");
  Automaton::Builder b;
  b.add_state("start");
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(slot("", i, v));
  b.alphabet(bit_alphabet());
  b.initial("start");
  for (uint32_t v = 0; v < 2; ++v)
    b.transition("start", Letter::plain(std::to_string(v)), slot("", 0, v));
  for (uint32_t i = 0; i + 1 < n; ++i)
    for (uint32_t v = 0; v < 2; ++v)
      for (uint32_t w = 0; w < 2; ++w)
        b.transition(slot("", i, v), Letter::plain(std::to_string(w)), slot("", i + 1, w));
  // Frontier: the last layer loops, keeping the automaton complete.
  for (uint32_t v = 0; v < 2; ++v)
    for (uint32_t w = 0; w < 2; ++w)
      b.transition(slot("", n - 1, v), Letter::plain(std::to_string(w)), slot("", n - 1, v));
  StateSet all(2 * n + 1);
  for (uint32_t i = 0; i < 2 * n + 1; ++i) all.insert(i);
  b.acceptance(SafetyAcc{all});
  return b.build();
}

Automaton copy_check(uint32_t n) {
  if (n < 1) throw DomainError("copy_check requires n >= 1");
  Automaton::Builder b;
  b.add_state("start");
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(slot("G1", i, v));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(slot("G2", i, v));
  b.add_state("sink");
  b.alphabet(bit_pair_alphabet());
  b.initial("start");

  auto pair = [](uint32_t x, uint32_t y) {
    return Letter::pair(std::to_string(x), std::to_string(y));
  };
  // G1 stores the output component of letters 0..n-1.
  for (uint32_t x = 0; x < 2; ++x)
    for (uint32_t y = 0; y < 2; ++y) b.transition("start", pair(x, y), slot("G1", 0, y));
  for (uint32_t i = 0; i + 1 < n; ++i)
    for (uint32_t v = 0; v < 2; ++v)
      for (uint32_t x = 0; x < 2; ++x)
        for (uint32_t y = 0; y < 2; ++y)
          b.transition(slot("G1", i, v), pair(x, y), slot("G1", i + 1, y));
  // G2 stores the input component of letters n..2n-1.
  for (uint32_t v = 0; v < 2; ++v)
    for (uint32_t x = 0; x < 2; ++x)
      for (uint32_t y = 0; y < 2; ++y)
        b.transition(slot("G1", n - 1, v), pair(x, y), slot("G2", 0, x));
  for (uint32_t i = 0; i + 1 < n; ++i)
    for (uint32_t v = 0; v < 2; ++v)
      for (uint32_t x = 0; x < 2; ++x)
        for (uint32_t y = 0; y < 2; ++y)
          b.transition(slot("G2", i, v), pair(x, y), slot("G2", i + 1, x));
  for (uint32_t v = 0; v < 2; ++v)
    for (uint32_t x = 0; x < 2; ++x)
      for (uint32_t y = 0; y < 2; ++y) b.transition(slot("G2", n - 1, v), pair(x, y), "sink");
  for (uint32_t x = 0; x < 2; ++x)
    for (uint32_t y = 0; y < 2; ++y) b.transition("sink", pair(x, y), "sink");

  std::vector<Formula> clauses;
  for (uint32_t i = 0; i < n; ++i)
    clauses.push_back(
        Formula::iff(Formula::var(slot("G1", i, 0)), Formula::var(slot("G2", i, 0))));
  b.acceptance(WeakMullerFormula{Formula::conj_all(clauses)});
  return b.build();
}

namespace {

Automaton pn_structure(uint32_t n, bool explicit_condition) {
  if (n < 1) throw DomainError("bad-j-pair automaton requires n >= 1");
  Automaton::Builder b;
  b.add_state("q_I");
  for (uint32_t j = 0; j < n; ++j) {
    b.add_state("G" + std::to_string(j) + "-left");
    b.add_state("G" + std::to_string(j) + "-right");
  }
  b.add_state("q_f");
  b.add_state("q_rej");  // undefined moves by construction; kept per the figure

  std::vector<Letter> alpha;
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      alpha.push_back(Letter::pair(std::to_string(x), std::to_string(y)));
  b.alphabet(alpha);
  b.initial("q_I");

  auto pair = [](uint32_t x, uint32_t y) {
    return Letter::pair(std::to_string(x), std::to_string(y));
  };
  // The first output letter selects the gadget; input is ignored there.
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      b.transition("q_I", pair(x, y), "G" + std::to_string(y) + "-left");
  // Gadget j scans the input component: left loops on != j and advances on j;
  // right loops on < j, falls back on > j, exits to q_f on j.
  for (uint32_t j = 0; j < n; ++j) {
    std::string left = "G" + std::to_string(j) + "-left";
    std::string right = "G" + std::to_string(j) + "-right";
    for (uint32_t x = 0; x < n; ++x)
      for (uint32_t y = 0; y < n; ++y) {
        b.transition(left, pair(x, y), x == j ? right : left);
        b.transition(right, pair(x, y), x == j ? "q_f" : (x < j ? right : left));
      }
  }
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) {
      b.transition("q_f", pair(x, y), "q_f");
      b.transition("q_rej", pair(x, y), "q_rej");
    }

  uint32_t total = 2 * n + 3;
  if (explicit_condition) {
    WeakMullerExplicit ex;
    for (uint32_t j = 0; j < n; ++j) {
      StateSet f(total);
      f.insert(0);                   // q_I
      f.insert(1 + 2 * j);           // left
      f.insert(2 + 2 * j);           // right
      f.insert(2 * n + 1);           // q_f
      ex.sets.push_back(std::move(f));
    }
    b.acceptance(std::move(ex));
  } else {
    StateSet f(total);
    f.insert(2 * n + 1);
    b.acceptance(ReachabilityAcc{f});
  }
  return b.build();
}

}  // namespace

Automaton pn_reach(uint32_t n) { return pn_structure(n, false); }
Automaton pn_explicit_wdma(uint32_t n) { return pn_structure(n, true); }

Automaton add_gadget(uint32_t n) {
  if (n < 1) throw DomainError("add_gadget requires n >= 1");
  Automaton::Builder b;
  auto res = [](uint32_t k, uint32_t r, uint32_t c) {
    return "res<" + std::to_string(k) + "/" + std::to_string(r) + "/" + std::to_string(c) + ">";
  };
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t r = 0; r < 2; ++r)
      for (uint32_t c = 0; c < 2; ++c) {
        if (k == 0 && r == 1 && c == 1) continue;  // unreachable, omitted
        b.add_state(res(k, r, c));
      }
  b.alphabet(bit_pair_alphabet());
  // Entering as if a zero block just completed: the next letter starts a new
  // block at position 0 with carry 0.
  b.initial(res(n - 1, 0, 0));

  auto pair = [](uint32_t x, uint32_t y) {
    return Letter::pair(std::to_string(x), std::to_string(y));
  };
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t r = 0; r < 2; ++r)
      for (uint32_t c = 0; c < 2; ++c) {
        if (k == 0 && r == 1 && c == 1) continue;
        for (uint32_t x = 0; x < 2; ++x)
          for (uint32_t y = 0; y < 2; ++y) {
            uint32_t carry_in = (k + 1 < n) ? c : 0;  // block boundary resets
            uint32_t s = x + y + carry_in;
            b.transition(res(k, r, c), pair(x, y), res((k + 1) % n, s % 2, s / 2));
          }
      }
  uint32_t total = 4 * n - 1;
  StateSet all(total);
  for (uint32_t i = 0; i < total; ++i) all.insert(i);
  b.acceptance(SafetyAcc{all});
  return b.build();
}

Automaton guess_bit(uint32_t n) {
  if (n < 1) throw DomainError("guess_bit requires n >= 1");
  Automaton::Builder b;
  b.add_state("start");
  for (uint32_t i = 0; i + 1 < n; ++i) b.add_state("s" + std::to_string(i));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) b.add_state(slot("", i, v));
  // Done chains per stored bit value; done<v>_<k> means k letters consumed.
  for (uint32_t v = 0; v < 2; ++v)
    for (uint32_t k = 2; k <= n; ++k)
      b.add_state("done" + std::to_string(v) + "_" + std::to_string(k));
  b.alphabet(bit_alphabet());
  b.initial("start");

  auto bitl = [](uint32_t v) { return Letter::plain(std::to_string(v)); };
  auto done = [](uint32_t v, uint32_t k) {
    return "done" + std::to_string(v) + "_" + std::to_string(k);
  };
  auto after_commit = [&](uint32_t i, uint32_t v) -> std::string {
    // From <i/v> with i+1 letters consumed; chain picks up at i+2.
    return i + 1 == n ? slot("", i, v) : done(v, i + 2);
  };

  for (uint32_t v = 0; v < 2; ++v) {
    b.transition("start", bitl(v), slot("", 0, v));  // commit at position 0
    if (n > 1) b.transition("start", bitl(v), "s0");  // defer
  }
  for (uint32_t i = 0; i + 1 < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) {
      b.transition("s" + std::to_string(i), bitl(v), slot("", i + 1, v));  // commit
      if (i + 2 < n) b.transition("s" + std::to_string(i), bitl(v), "s" + std::to_string(i + 1));
    }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) {
      if (i + 1 == n) continue;  // terminal commit
      for (uint32_t w = 0; w < 2; ++w) b.transition(slot("", i, v), bitl(w), after_commit(i, v));
    }
  for (uint32_t v = 0; v < 2; ++v)
    for (uint32_t k = 2; k < n; ++k)
      for (uint32_t w = 0; w < 2; ++w) b.transition(done(v, k), bitl(w), done(v, k + 1));
  // Terminals loop (frontier): committed-at-last states and chain ends.
  for (uint32_t v = 0; v < 2; ++v) {
    for (uint32_t w = 0; w < 2; ++w)
      b.transition(slot("", n - 1, v), bitl(w), slot("", n - 1, v));
    if (n > 1)
      for (uint32_t w = 0; w < 2; ++w) b.transition(done(v, n), bitl(w), done(v, n));
  }

  uint32_t total = static_cast<uint32_t>(b.num_states());
  StateSet all(total);
  for (uint32_t i = 0; i < total; ++i) all.insert(i);
  b.acceptance(SafetyAcc{all});
  return b.build();
}

std::set<std::pair<uint32_t, uint32_t>> guess_bit_records(
    uint32_t n, const std::vector<uint8_t>& block) {
  if (block.size() != n) throw DomainError("guess_bit_records: block must have n bits");
  Automaton g = guess_bit(n);
  std::vector<letter_t> word;
  for (uint8_t bit : block)
    word.push_back(*g.letter_index(Letter::plain(std::to_string(bit))));

  // Enumerate all runs on the block and read off the committed <i/b> state
  // each run visited.
  std::map<std::string, std::pair<uint32_t, uint32_t>> commit_of;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t v = 0; v < 2; ++v) commit_of[slot("", i, v)] = {i, v};

  std::set<std::pair<uint32_t, uint32_t>> records;
  struct Frame {
    state_t q;
    size_t pos;
    std::optional<std::pair<uint32_t, uint32_t>> committed;
  };
  std::vector<Frame> stack{{g.initial(), 0, std::nullopt}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    auto it = commit_of.find(g.state_name(f.q));
    if (it != commit_of.end()) f.committed = it->second;
    if (f.pos == n) {
      if (f.committed) records.insert(*f.committed);
      continue;
    }
    for (const Transition& t : g.successors(f.q, word[f.pos]))
      stack.push_back({t.dst, f.pos + 1, f.committed});
  }
  return records;
}

// --- Address update checker ---------------------------------------------------

namespace {

std::vector<Letter> addr_alphabet() {
  return {Letter::plain("0"), Letter::plain("1"), Letter::plain("0x"), Letter::plain("1x"),
          Letter::plain("#")};
}

}  // namespace

Automaton addr_update_checker(uint32_t n) {
  if (n < 1) throw DomainError("addr_update_checker requires n >= 1");
  Automaton::Builder b;
  // Phase 1, no mark yet: position i in the first block.
  for (uint32_t i = 0; i < n; ++i) b.add_state("pre" + std::to_string(i));
  // Post-mark: the matching bit arrives exactly n+1 letters after the marked
  // one (block-1 tail, separator, block-2 prefix), independent of the marked
  // position. State carries the countdown d, the marked value v, the
  // all-ones flag over the block-1 tail, and whether the separator passed.
  auto mstate = [](uint32_t d, uint32_t v, uint32_t ones, uint32_t past) {
    return "m" + std::to_string(d) + "_" + std::to_string(v) + std::to_string(ones) +
           std::to_string(past);
  };
  for (uint32_t d = 1; d <= n + 1; ++d)
    for (uint32_t v = 0; v < 2; ++v)
      for (uint32_t ones = 0; ones < 2; ++ones)
        for (uint32_t past = 0; past < 2; ++past) b.add_state(mstate(d, v, ones, past));
  // Unmarked first block: consume separator and second block, no claim.
  for (uint32_t i = 0; i <= n; ++i) b.add_state("noclaim" + std::to_string(i));
  b.add_state("ok");
  b.add_state("faulty");
  b.add_state("bad-format");
  b.alphabet(addr_alphabet());
  b.initial("pre0");

  auto lt = [](const std::string& t) { return Letter::plain(t); };
  const char* bits[] = {"0", "1"};
  const char* marked[] = {"0x", "1x"};

  for (uint32_t i = 0; i < n; ++i) {
    std::string cur = "pre" + std::to_string(i);
    std::string next_unmarked = (i + 1 < n) ? "pre" + std::to_string(i + 1) : "noclaim0";
    for (uint32_t v = 0; v < 2; ++v) {
      b.transition(cur, lt(bits[v]), next_unmarked);
      b.transition(cur, lt(marked[v]), mstate(n + 1, v, 1, 0));
    }
    b.transition(cur, lt("#"), "bad-format");
  }

  // noclaim0 expects the separator, then noclaim1..noclaimn consume the
  // second block.
  b.transition("noclaim0", lt("#"), "noclaim1");
  for (const char* t : {"0", "1", "0x", "1x"}) b.transition("noclaim0", lt(t), "bad-format");
  for (uint32_t i = 1; i <= n; ++i) {
    std::string cur = "noclaim" + std::to_string(i);
    std::string next = (i < n) ? "noclaim" + std::to_string(i + 1) : "ok";
    for (uint32_t v = 0; v < 2; ++v) {
      b.transition(cur, lt(bits[v]), next);
      b.transition(cur, lt(marked[v]), next);  // marks in block 2 are ignored
    }
    b.transition(cur, lt("#"), "bad-format");
  }

  for (uint32_t d = 1; d <= n + 1; ++d)
    for (uint32_t v = 0; v < 2; ++v)
      for (uint32_t ones = 0; ones < 2; ++ones)
        for (uint32_t past = 0; past < 2; ++past) {
          std::string cur = mstate(d, v, ones, past);
          if (!past) {
            // Inside block 1; the tail accumulates the all-ones flag. The
            // separator freezes it. d = 1 before the separator cannot happen
            // on well-formed input.
            b.transition(cur, lt("#"), d > 1 ? mstate(d - 1, v, ones, 1) : "bad-format");
            for (uint32_t w = 0; w < 2; ++w) {
              uint32_t ones2 = (ones && w == 1) ? 1 : 0;
              std::string next = (d > 1) ? mstate(d - 1, v, ones2, 0) : "bad-format";
              b.transition(cur, lt(bits[w]), next);
              b.transition(cur, lt(marked[w]), next);  // later marks count as bits
            }
          } else {
            b.transition(cur, lt("#"), "bad-format");
            for (uint32_t w = 0; w < 2; ++w) {
              std::string next;
              if (d == 1) {
                // The matching bit flips exactly when the block-1 tail was
                // all ones.
                uint32_t expected = v ^ ones;
                next = (w == expected) ? "ok" : "faulty";
              } else {
                next = mstate(d - 1, v, ones, 1);
              }
              b.transition(cur, lt(bits[w]), next);
              b.transition(cur, lt(marked[w]), next);
            }
          }
        }

  for (const char* t : {"0", "1", "0x", "1x", "#"}) {
    b.transition("ok", lt(t), "ok");
    b.transition("faulty", lt(t), "faulty");
    b.transition("bad-format", lt(t), "bad-format");
  }

  StateSet f(static_cast<uint32_t>(b.num_states()));
  f.insert(b.state("faulty"));
  b.acceptance(ReachabilityAcc{f});
  return b.build();
}

std::vector<Letter> addr_update_word(uint32_t n, uint32_t address, uint32_t marked_bit,
                                     uint32_t claimed_successor) {
  if (marked_bit >= n) throw DomainError("addr_update_word: marked bit out of range");
  std::vector<Letter> w;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t sig = n - 1 - i;  // read order is most significant first
    uint32_t bit = (address >> sig) & 1;
    bool mark = sig == marked_bit;
    w.push_back(Letter::plain(std::to_string(bit) + (mark ? "x" : "")));
  }
  w.push_back(Letter::plain("#"));
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t sig = n - 1 - i;
    w.push_back(Letter::plain(std::to_string((claimed_successor >> sig) & 1)));
  }
  return w;
}

// --- Superblock codec ---------------------------------------------------------

std::string superblock_encode(uint32_t n, uint64_t value) {
  if (n < 1 || n > 5) throw DomainError("superblock codec supports 1 <= n <= 5");
  uint32_t groups = 1u << n;
  if (value >> groups)
    throw DomainError("superblock value out of range [0, 2^(2^n) - 1]");
  std::string out;
  out.reserve(size_t(groups) * (n + 2));
  for (uint32_t i = 0; i < groups; ++i) {
    out += '#';
    for (uint32_t b = 0; b < n; ++b) out += char('0' + ((i >> (n - 1 - b)) & 1));
    // Special bit i carries significance groups-1-i (least significant last).
    out += char('0' + ((value >> (groups - 1 - i)) & 1));
  }
  return out;
}

uint64_t superblock_decode(uint32_t n, const std::string& word) {
  if (n < 1 || n > 5) throw DomainError("superblock codec supports 1 <= n <= 5");
  uint32_t groups = 1u << n;
  size_t group_len = n + 2;
  if (word.size() != size_t(groups) * group_len)
    throw ParseError("superblock: wrong length " + std::to_string(word.size()) + ", expected " +
                     std::to_string(size_t(groups) * group_len));
  uint64_t value = 0;
  for (uint32_t i = 0; i < groups; ++i) {
    size_t base = size_t(i) * group_len;
    char marker = word[base];
    if (marker != '#')
      throw ParseError("superblock: block " + std::to_string(i) + " has bad marker '" +
                       std::string(1, marker) + "'");
    uint32_t addr = 0;
    for (uint32_t b = 0; b < n; ++b) {
      char c = word[base + 1 + b];
      if (c != '0' && c != '1')
        throw ParseError("superblock: block " + std::to_string(i) + " has non-bit address");
      addr = (addr << 1) | uint32_t(c - '0');
    }
    if (addr != i)
      throw ParseError("superblock: block " + std::to_string(i) +
                       " has non-incrementing address " + std::to_string(addr));
    char sp = word[base + 1 + n];
    if (sp != '0' && sp != '1')
      throw ParseError("superblock: block " + std::to_string(i) + " has non-bit special bit");
    value = (value << 1) | uint64_t(sp - '0');
  }
  return value;
}

}  // namespace wmdelay
