#pragma once

#include <cstdint>
#include <vector>

#include "wmdelay/arena.hh"

namespace wmdelay {

enum class Player : uint8_t { O = 0, I = 1 };

/// Büchi game solution: full winning-region partition plus one positional
/// strategy edge per node for its winner (index into the node's edge list).
struct BuchiSolution {
  std::vector<uint8_t> winner;     // per node: 0 = O wins, 1 = I wins
  std::vector<uint32_t> strategy;  // per node: chosen edge of the winner
  Player winner_from(uint32_t node) const { return static_cast<Player>(winner[node]); }
};

/// Classical recursive-attractor fixpoint for Büchi games. Deterministic:
/// strategies break ties toward the lowest-index successor. Every node must
/// have at least one successor.
BuchiSolution solve_buchi(const GameGraph& g);

/// Independent cross-validation oracle: Zielonka's recursive algorithm over a
/// max-parity encoding. Returns the winner per node.
std::vector<uint8_t> solve_parity_zielonka(const GameGraph& g,
                                           const std::vector<uint32_t>& color);

}  // namespace wmdelay
