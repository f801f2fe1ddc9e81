#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmdelay/automaton.hh"
#include "wmdelay/lasso.hh"
#include "wmdelay/rng.hh"

namespace wmdelay {

/// Random deterministic complete weak Muller automaton with an explicit
/// condition, over a binary plain alphabet.
Automaton random_det_wdma(uint32_t num_states, Rng& rng);

/// Random non-deterministic weak Muller automaton (1-2 successors per state
/// and letter), explicit condition, binary plain alphabet.
Automaton random_wnma(uint32_t num_states, Rng& rng);

/// All lassos with |u| <= max_u and 1 <= |v| <= max_v over the alphabet.
std::vector<Lasso> all_lassos(const std::vector<Letter>& alphabet, size_t max_u, size_t max_v);

struct Lemma33Report {
  uint32_t det_automata;
  uint32_t nondet_automata;
  uint64_t lassos_compared;
  uint64_t mismatches;
  double millis;
};

/// Language-preservation check of the weak Muller -> parity translation on
/// random automata, exhaustive over short lassos.
Lemma33Report verify_lemma33(uint32_t det_count, uint32_t nondet_count, uint32_t max_states,
                             uint64_t seed);

struct MonotoneReport {
  std::vector<int> ks;
  std::vector<char> o_wins;  // per k
  bool monotone;             // no O-to-I flip as k grows
  double millis;
};

/// Winner sweep of the delay game for k = 1..k_max; checks that once O wins
/// she keeps winning with more lookahead.
MonotoneReport verify_monotone(const Automaton& a, int k_max, size_t node_budget);

}  // namespace wmdelay
