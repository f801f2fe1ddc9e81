#pragma once

#include <optional>

#include "wmdelay/arena.hh"
#include "wmdelay/solver.hh"

namespace wmdelay {

/// Normalizes a deterministic automaton (weak Muller / parity / safety /
/// reachability) into an equivalent parity automaton with colors in {1, 2}:
/// weak Muller goes through the occurrence-set translation, safety and
/// reachability through language-preserving sink collapse.
Automaton normalize_for_delay(const Automaton& a);

struct DelayResult {
  Player winner;
  size_t arena_nodes;
  size_t automaton_states;  // after normalization
};

/// Winner of the delay game with winning condition L(a) and constant
/// lookahead k. Non-deterministic winning conditions are refused.
DelayResult solve_delay(const Automaton& a, int k, size_t node_budget = kDefaultNodeBudget);

struct LookaheadReport {
  std::optional<int> minimal_k;       // smallest k in [1, k_max] won by O, if any
  std::optional<int> certified_o_win; // some k where O was seen winning (partial runs)
  int largest_decided = 0;            // largest k whose game was solved
  bool budget_hit = false;            // a solve aborted on the node budget
};

/// Smallest constant lookahead in [1, k_max] with which O wins, searched by
/// bisection (lookahead monotonicity makes the predicate monotone). On budget
/// exhaustion the report carries the largest decided k instead.
LookaheadReport minimal_lookahead(const Automaton& a, int k_max,
                                  size_t node_budget = kDefaultNodeBudget);

}  // namespace wmdelay
