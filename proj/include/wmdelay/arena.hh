#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// Constant delay function: f(0) = k, f(i) = 1 for i > 0. Player O has a
/// fixed lookahead of k input letters.
struct DelaySpec {
  int k = 1;
};

inline constexpr size_t kDefaultNodeBudget = 50'000'000;

/// Finite two-player game graph with a Buchi objective for player O
/// (owner 0). Also the interface consumed by the solvers.
struct GameGraph {
  std::vector<uint8_t> owner;       // 0 = O, 1 = I
  std::vector<uint8_t> buchi;       // objective set for O
  std::vector<uint32_t> edge_off;   // CSR
  std::vector<uint32_t> edge_to;
  uint32_t initial = 0;

  size_t size() const { return owner.size(); }
  std::span<const uint32_t> succ(uint32_t v) const {
    return {edge_to.data() + edge_off[v], edge_to.data() + edge_off[v + 1]};
  }
};

/// Delay game at fixed constant lookahead, made explicit: nodes are
/// (parity-automaton state, pending-input queue, turn). Player I appends one
/// input letter; player O consumes the oldest pending letter paired with her
/// output letter, advancing the automaton. The queue has length exactly k at
/// O nodes; the turn is determined by the queue length.
struct ArenaGame {
  GameGraph graph;
  int k = 1;

  std::vector<state_t> node_state;    // automaton state per node
  std::vector<uint64_t> node_queue;   // canonical queue id per node
  std::vector<std::string> sigma_i;   // input tokens, sorted
  std::vector<std::string> sigma_o;   // output tokens, sorted

  size_t queue_len(uint32_t node) const;
  std::vector<uint32_t> queue_letters(uint32_t node) const;  // oldest first
};

/// Builds the reachable arena for a deterministic complete parity automaton
/// (colors in {1,2}) over a product alphabet covering sigma_i x sigma_o.
/// Node identity is canonical (state, queue) with deterministic numbering.
/// Exceeding the node budget raises ResourceError reporting the bound.
ArenaGame build_arena(const Automaton& a, const DelaySpec& spec,
                      size_t node_budget = kDefaultNodeBudget);

/// Splits a product alphabet into its input/output components and the
/// pair-letter lookup table; validates the alphabet is the full product.
struct AlphabetSplit {
  std::vector<std::string> sigma_i;
  std::vector<std::string> sigma_o;
  std::vector<letter_t> pair_index;  // [i * |sigma_o| + o] -> letter index
};
AlphabetSplit split_product_alphabet(const Automaton& a);

}  // namespace wmdelay
