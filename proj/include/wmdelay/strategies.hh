#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wmdelay/delay.hh"
#include "wmdelay/gadgets.hh"
#include "wmdelay/simulate.hh"

namespace wmdelay {

// Scripted strategies from the constructions' winning arguments. Every
// strategy is deterministic: equal histories produce equal moves.

/// O for the copy-check game: copies alpha(t+n) into beta(t) for t < n, then
/// a fixed letter. Raises StrategyError when the lookahead leaves alpha(t+n)
/// unseen (k <= n).
StrategyPtr o_copycheck(uint32_t n);

/// O for the bad-j-pair game: picks beta(0) = j for a bad j-pair found in the
/// buffered alpha(1)...; guaranteed to exist at k >= 2^n + 1. With lenient
/// set, a missing pair falls back to alpha(1) instead of raising.
StrategyPtr o_pn(uint32_t n, bool lenient = false);

/// I spoiler for the bad-j-pair game: one sentinel letter, the bad-pair-free
/// word of length 2^n - 1, then the fixed letter (j+1) mod n once beta(0)=j
/// is revealed; wins whenever k <= 2^n.
StrategyPtr i_pn_spoiler(uint32_t n);

/// O for the theorem-scale game: picks y_0 with a bad y_0-pair among the
/// buffered numbers, marks the pair with exactly two marks, plays
/// y_i = y_0 - x_i between the marks and zeros elsewhere. Needs the full
/// 2^(2^n)-number window buffered (feasible for n in {1, 2}).
StrategyPtr o_thm41(uint32_t n);

/// I spoiler for the theorem-scale game: encodes the bad-pair-free word over
/// [0, 2^n - 1], then repeats a fixed number different from y_0.
StrategyPtr i_thm41_spoiler(uint32_t n);

/// Heuristic O battery for spoiler tests.
StrategyPtr o_thm41_random_valid(uint32_t n, uint64_t seed);
StrategyPtr o_thm41_greedy(uint32_t n);

/// Valid-encoding random input player for the theorem-scale game: a seeded
/// tape of `blocks` random numbers, repeated forever.
StrategyPtr i_thm41_random_valid(uint32_t n, uint64_t seed, uint32_t blocks = 24);

/// Uniform random letters from a fixed token set, as a seeded tape of
/// `period` moves repeated forever (finite memory, so plays close).
StrategyPtr random_token_strategy(std::vector<std::string> tokens, uint64_t seed,
                                  uint32_t period = 64);

/// Constant letter.
StrategyPtr const_strategy(std::string token);

/// Replays the positional winner strategy of a solved arena for `player`.
/// The automaton must be the normalized (parity) one the arena was built on.
StrategyPtr arena_strategy(std::shared_ptr<const Automaton> parity,
                           std::shared_ptr<const ArenaGame> arena,
                           std::shared_ptr<const BuchiSolution> solution, Player player);

/// CLI factory: specs like "random", "random:8", "const:0", "copycheck:4",
/// "pn:2", "pn-lenient:2", "pn-spoiler:2", "thm41:1", "thm41-greedy:1",
/// "thm41-random:1", "thm41-spoiler:1", "solver". `for_output` selects the
/// side; `a` is the game automaton, k its lookahead (used by "solver").
StrategyPtr make_strategy(const std::string& spec, bool for_output, const Automaton& a, int k,
                          uint64_t seed, size_t node_budget = kDefaultNodeBudget);

}  // namespace wmdelay
