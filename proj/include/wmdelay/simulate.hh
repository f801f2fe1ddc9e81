#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wmdelay/automaton.hh"
#include "wmdelay/lasso.hh"
#include "wmdelay/solver.hh"

namespace wmdelay {

/// Everything a strategy may base its move on: all input letters emitted so
/// far and all output letters emitted so far (both players' moves are
/// public; the buffered lookahead is exactly inputs beyond outputs).
struct PlayHistory {
  const std::vector<std::string>& inputs;
  const std::vector<std::string>& outputs;
  int lookahead;  // the constant k of the running game
};

/// A player strategy. next() must be a pure function of the history and the
/// internal state summarized by fingerprint(): equal (history-suffix
/// context, fingerprint) must produce equal continuations, which is what the
/// play-repetition detector relies on.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual void reset() {}
  virtual std::string next(const PlayHistory& h) = 0;
  virtual uint64_t fingerprint() const { return 0; }
};

using StrategyPtr = std::unique_ptr<Strategy>;

enum class Verdict { Accept, Reject, Unresolved };

struct PlayRound {
  std::vector<std::string> inputs;  // u_i (k letters in round 0, then 1)
  std::string output;               // v_i
};

struct PlayTranscript {
  std::vector<PlayRound> rounds;
  Verdict verdict = Verdict::Unresolved;
  Lasso lasso;          // closed play (product letters), when resolved
  size_t loop_start = 0;  // round index where the cycle begins
};

/// Plays the delay game round by round: round 0 gives Player I k moves, then
/// strictly alternating single moves. Once the joint configuration
/// (automaton state, pending queue, both fingerprints) repeats, the play is
/// closed into a lasso and decided exactly via the acceptance oracle;
/// otherwise UNRESOLVED after round_budget rounds. Strategies emitting
/// letters outside their alphabet raise StrategyError naming strategy and
/// round.
PlayTranscript simulate_play(const Automaton& a, int k, Strategy& strat_i, Strategy& strat_o,
                             size_t round_budget);

}  // namespace wmdelay
