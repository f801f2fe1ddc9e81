#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wmdelay/formula.hh"
#include "wmdelay/state_set.hh"

namespace wmdelay {

using state_t = uint32_t;
using letter_t = uint32_t;

/// Alphabet letter: a plain token or an ordered (input, output) token pair.
/// Tokens are non-empty and contain no whitespace, commas, or quotes.
class Letter {
 public:
  static Letter plain(std::string token);
  static Letter pair(std::string in, std::string out);

  bool is_pair() const { return pair_; }
  const std::string& token() const { return in_; }   // plain letters
  const std::string& input() const { return in_; }   // pair: first component
  const std::string& output() const { return out_; } // pair: second component

  /// Display form: the token itself, or "in/out" for pairs.
  std::string text() const;

  auto operator<=>(const Letter&) const = default;

 private:
  Letter(std::string in, std::string out, bool pair);
  std::string in_, out_;
  bool pair_ = false;
};

// --- Acceptance conditions --------------------------------------------------

struct SafetyAcc {
  StateSet safe;  // F: every visited state must lie in F
};

struct ReachabilityAcc {
  StateSet target;  // F: some visited state must lie in F
};

struct ParityAcc {
  std::vector<uint32_t> color;  // total coloring, indexed by state
};

struct WeakMullerExplicit {
  std::vector<StateSet> sets;  // the family F, duplicate-free
};

struct WeakMullerFormula {
  Formula formula;  // Emerson-Lei condition over state names
};

using Acceptance =
    std::variant<SafetyAcc, ReachabilityAcc, ParityAcc, WeakMullerExplicit, WeakMullerFormula>;

bool is_weak_muller(const Acceptance& acc);
const char* acceptance_kind_name(const Acceptance& acc);

struct Transition {
  state_t src;
  letter_t letter;
  state_t dst;
  auto operator<=>(const Transition&) const = default;
};

/// Immutable omega-automaton (Q, Sigma, q_I, Delta, Acc). The determinism
/// flag is derived: true iff every (state, letter) has exactly one outgoing
/// transition, i.e. Delta is a total function.
class Automaton {
 public:
  class Builder;

  size_t num_states() const { return states_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(state_t q) const { return states_[q]; }
  std::optional<state_t> state_index(const std::string& name) const;

  const std::vector<Letter>& alphabet() const { return alphabet_; }
  std::optional<letter_t> letter_index(const Letter& l) const;

  state_t initial() const { return initial_; }
  const Acceptance& acceptance() const { return acceptance_; }
  bool deterministic() const { return deterministic_; }

  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Successors of (q, letter); contiguous, possibly empty.
  std::span<const Transition> successors(state_t q, letter_t l) const;

  /// Unique successor; requires a deterministic automaton.
  state_t step(state_t q, letter_t l) const { return successors(q, l).front().dst; }

  /// Evaluates a weak Muller condition on an occurrence set.
  /// Only valid when is_weak_muller(acceptance()).
  bool weak_muller_sat(const StateSet& occ) const;

  /// name -> index map of all states (for formula compilation etc.).
  std::map<std::string, uint32_t> state_index_map() const;

 private:
  Automaton() = default;

  std::vector<std::string> states_;
  std::vector<Letter> alphabet_;
  state_t initial_ = 0;
  std::vector<Transition> transitions_;    // sorted by (src, letter, dst)
  std::vector<uint32_t> row_;              // CSR offsets per (src, letter)
  Acceptance acceptance_ = SafetyAcc{};
  bool deterministic_ = false;
  CompiledFormula compiled_;               // only for WeakMullerFormula
};

class Automaton::Builder {
 public:
  state_t add_state(std::string name);
  Builder& alphabet(std::vector<Letter> letters);
  Builder& initial(const std::string& name);
  Builder& transition(const std::string& src, const Letter& l, const std::string& dst);
  Builder& transition(state_t src, letter_t l, state_t dst);
  Builder& acceptance(Acceptance acc);

  /// Validates all invariants and produces the automaton.
  Automaton build();

  state_t state(const std::string& name) const;
  size_t num_states() const { return states_.size(); }

 private:
  std::vector<std::string> states_;
  std::map<std::string, state_t> index_;
  std::vector<Letter> alphabet_;
  std::map<Letter, letter_t> letter_index_;
  std::optional<state_t> initial_;
  std::vector<Transition> transitions_;
  std::optional<Acceptance> acceptance_;
};

/// Runs a deterministic complete automaton on a finite word. Returns the state
/// reached and the occurrence set of the run prefix (initial state included).
std::pair<state_t, StateSet> run_det(const Automaton& a, std::span<const Letter> word);

/// Resolves letters against the automaton's alphabet; unknown letter or arity
/// mismatch raises ValidationError.
std::vector<letter_t> resolve_word(const Automaton& a, std::span<const Letter> word);

}  // namespace wmdelay
