#pragma once

#include <vector>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// State of the translated parity automaton: a source state plus the
/// occurrence set accumulated so far. base is always a member of occ, and occ
/// never shrinks along transitions.
struct TrackedState {
  state_t base;
  StateSet occ;
};

/// Result of the weak Muller -> parity translation. The automaton's states
/// are exactly the tracked pairs reachable from (q_I, {q_I}); tracked[i]
/// describes state i.
struct Translated {
  Automaton automaton;
  std::vector<TrackedState> tracked;
};

/// Lemma-style translation: tracks the occurrence set of a run, colors a pair
/// 2 when its occurrence set satisfies the weak Muller condition and 1
/// otherwise. Works for deterministic and non-deterministic input;
/// determinism is preserved and L(result) = L(input). Only reachable pairs
/// are materialized.
Translated weak_muller_to_parity(const Automaton& a);

/// Shape summary of a translated automaton.
struct ColorProfile {
  size_t num_states;
  size_t color1_states;
  size_t color2_states;
  /// Maximum number of strict occurrence-set growths along any path
  /// (finite: growth edges form a DAG over occurrence sets).
  size_t max_occ_growth;
};

ColorProfile color_profile(const Translated& t);

}  // namespace wmdelay
