#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wmdelay/automaton.hh"
#include "wmdelay/lasso.hh"

namespace wmdelay {

/// Chain gadget storing an n-bit sequence: a start state plus states <i/b>
/// for i in [0,n-1], b in {0,1}. After reading a_0...a_{n-1} the run sits in
/// <n-1/a_{n-1}> having visited exactly the <i/a_i>. The final layer loops on
/// every letter (declared frontier), so the automaton is complete. Plain
/// alphabet {0,1}; trivial safety acceptance (structure-only fragment).
Automaton bit_store(uint32_t n);

/// Copy-check language over {0,1}x{0,1}: the first n output bits must equal
/// input bits n..2n-1. Two chained store gadgets G1 (output-driven) and G2
/// (input-driven) with an Emerson-Lei condition /\_i (G1<i/0> <-> G2<i/0>).
Automaton copy_check(uint32_t n);

/// Bad-j-pair automaton over {0,...,n-1} x {0,...,n-1}: the first output
/// letter j selects gadget j, which hunts for a bad j-pair in the input
/// stream from the second letter on; q_f is reached exactly when one is
/// found. 2n+3 states including the (unreachable) rejecting sink.
Automaton pn_reach(uint32_t n);

/// Same structure with the explicit weak Muller family F = {F_0,...,F_{n-1}},
/// F_j = {q_I, q_f} + both states of gadget j.
Automaton pn_explicit_wdma(uint32_t n);

/// Block adder over {0,1}x{0,1}: states res<k/b/c> where reading position k
/// with carry yields result bit b and carry c. Little-endian blocks of n
/// bits; the carry resets at each block boundary and the final carry of a
/// block is recorded in res<n-1/./c>. Initial state res<n-1/0/0>; exactly
/// 4n-1 states (res<0/1/1> is unreachable and omitted).
Automaton add_gadget(uint32_t n);

/// Non-deterministic one-bit sampler for n-bit blocks: commits to some
/// position i and records the committed (i, bit) by visiting state <i/b>;
/// the remaining letters run through per-bit-value done chains. The only
/// non-deterministic generator.
Automaton guess_bit(uint32_t n);

/// Committed (position, bit) records over all runs of guess_bit(n) on a
/// block of n bits.
std::set<std::pair<uint32_t, uint32_t>> guess_bit_records(uint32_t n,
                                                          const std::vector<uint8_t>& block);

/// Binary-increment audit for one marked address bit. Input: an n-bit block
/// over letters {0,1,0x,1x} with one x-marked bit, a "#" separator, then the
/// claimed successor block. Reaches state "faulty" iff the marked bit differs
/// from the binary increment (mod 2^n) of the first block at that position;
/// reachability acceptance on {faulty}.
Automaton addr_update_checker(uint32_t n);

/// Builds the 2n+1-letter checker input for a concrete triple.
std::vector<Letter> addr_update_word(uint32_t n, uint32_t address, uint32_t marked_bit,
                                     uint32_t claimed_successor);

/// Superblock codec for values in [0, 2^(2^n) - 1]: "#" + address + special
/// bit per group, addresses ascending from 0, address bits and the special
/// bit sequence both most-significant-first (least significant rightmost).
std::string superblock_encode(uint32_t n, uint64_t value);
uint64_t superblock_decode(uint32_t n, const std::string& word);

// --- Theorem-scale bad-pair automaton over n-bit numbers ---------------------

struct Thm41Options {
  /// Forbid the final carry in the in-between addition check (restores exact
  /// x_i + y_i = y_0 semantics). Off reproduces the literal published
  /// formula, which admits modular wrap-around.
  bool forbid_final_carry = true;
};

/// Deterministic Emerson-Lei automaton over {0,1,#} x {0,1,m,#}: input spells
/// numbers x_0 x_1 ... in n-bit blocks, output spells y_0 y_1 ... and marks
/// ("m") exactly two blocks; accepted iff the marked numbers equal y_0 and
/// every number strictly between them satisfies x_i + y_i = y_0 — i.e. iff a
/// bad y_0-pair is correctly marked. Format violations route to q_acc/q_rej.
/// Theta(n) states and formula size.
Automaton thm41_automaton(uint32_t n, const Thm41Options& opt = {});

/// Prose-level acceptance decision for the same language, evaluated directly
/// on an ultimately periodic word; independent of the automaton.
bool thm41_semantic_accepts(uint32_t n, const Lasso& lasso, const Thm41Options& opt = {});

/// Alphabets of the thm41 game.
std::vector<std::string> thm41_input_tokens();
std::vector<std::string> thm41_output_tokens();

}  // namespace wmdelay
