#include "wmdelay/automaton.hh"

#include <algorithm>
#include <unordered_set>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

void check_token(const std::string& tok) {
  if (tok.empty()) throw ValidationError("letter token must be non-empty");
  for (char c : tok)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '"')
      throw ValidationError("letter token contains whitespace, comma, or quote: '" + tok + "'");
}

}  // namespace

Letter::Letter(std::string in, std::string out, bool pair)
    : in_(std::move(in)), out_(std::move(out)), pair_(pair) {}

Letter Letter::plain(std::string token) {
  check_token(token);
  return Letter(std::move(token), {}, false);
}

Letter Letter::pair(std::string in, std::string out) {
  check_token(in);
  check_token(out);
  return Letter(std::move(in), std::move(out), true);
}

std::string Letter::text() const {
  return pair_ ? in_ + "/" + out_ : in_;
}

bool is_weak_muller(const Acceptance& acc) {
  return std::holds_alternative<WeakMullerExplicit>(acc) ||
         std::holds_alternative<WeakMullerFormula>(acc);
}

const char* acceptance_kind_name(const Acceptance& acc) {
  if (std::holds_alternative<SafetyAcc>(acc)) return "safety";
  if (std::holds_alternative<ReachabilityAcc>(acc)) return "reachability";
  if (std::holds_alternative<ParityAcc>(acc)) return "parity";
  return "weak-muller";
}

std::optional<state_t> Automaton::state_index(const std::string& name) const {
  for (state_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return i;
  return std::nullopt;
}

std::optional<letter_t> Automaton::letter_index(const Letter& l) const {
  for (letter_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == l) return i;
  return std::nullopt;
}

std::span<const Transition> Automaton::successors(state_t q, letter_t l) const {
  size_t cell = size_t(q) * alphabet_.size() + l;
  return {transitions_.data() + row_[cell], transitions_.data() + row_[cell + 1]};
}

bool Automaton::weak_muller_sat(const StateSet& occ) const {
  if (const auto* ex = std::get_if<WeakMullerExplicit>(&acceptance_)) {
    for (const StateSet& f : ex->sets)
      if (f == occ) return true;
    return false;
  }
  return compiled_.eval(occ);
}

std::map<std::string, uint32_t> Automaton::state_index_map() const {
  std::map<std::string, uint32_t> m;
  for (uint32_t i = 0; i < states_.size(); ++i) m.emplace(states_[i], i);
  return m;
}

// --- Builder ----------------------------------------------------------------

state_t Automaton::Builder::add_state(std::string name) {
  if (name.empty()) throw ValidationError("state name must be non-empty");
  if (name.find('"') != std::string::npos || name.find('\n') != std::string::npos)
    throw ValidationError("state name contains quote or newline: " + name);
  auto [it, fresh] = index_.emplace(name, static_cast<state_t>(states_.size()));
  if (!fresh) throw ValidationError("duplicate state name: " + name);
  states_.push_back(std::move(name));
  return it->second;
}

state_t Automaton::Builder::state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown state: " + name);
  return it->second;
}

Automaton::Builder& Automaton::Builder::alphabet(std::vector<Letter> letters) {
  if (letters.empty()) throw ValidationError("alphabet must be non-empty");
  bool pair = letters.front().is_pair();
  for (const Letter& l : letters)
    if (l.is_pair() != pair)
      throw ValidationError("alphabet mixes plain and pair letters");
  letter_index_.clear();
  for (letter_t i = 0; i < letters.size(); ++i) {
    if (!letter_index_.emplace(letters[i], i).second)
      throw ValidationError("duplicate letter in alphabet: " + letters[i].text());
  }
  alphabet_ = std::move(letters);
  return *this;
}

Automaton::Builder& Automaton::Builder::initial(const std::string& name) {
  initial_ = state(name);
  return *this;
}

Automaton::Builder& Automaton::Builder::transition(const std::string& src, const Letter& l,
                                                   const std::string& dst) {
  auto it = letter_index_.find(l);
  if (it == letter_index_.end())
    throw ValidationError("transition uses letter outside the alphabet: " + l.text());
  return transition(state(src), it->second, state(dst));
}

Automaton::Builder& Automaton::Builder::transition(state_t src, letter_t l, state_t dst) {
  if (src >= states_.size() || dst >= states_.size())
    throw ValidationError("transition references unknown state index");
  if (l >= alphabet_.size())
    throw ValidationError("transition references unknown letter index");
  transitions_.push_back({src, l, dst});
  return *this;
}

Automaton::Builder& Automaton::Builder::acceptance(Acceptance acc) {
  acceptance_ = std::move(acc);
  return *this;
}

Automaton Automaton::Builder::build() {
  if (states_.empty()) throw ValidationError("automaton has no states");
  if (alphabet_.empty()) throw ValidationError("automaton has no alphabet");
  if (!initial_) throw ValidationError("automaton has no initial state");
  if (!acceptance_) throw ValidationError("automaton has no acceptance condition");

  Automaton a;
  a.states_ = states_;
  a.alphabet_ = alphabet_;
  a.initial_ = *initial_;
  a.acceptance_ = std::move(*acceptance_);

  std::sort(transitions_.begin(), transitions_.end());
  for (size_t i = 1; i < transitions_.size(); ++i)
    if (transitions_[i] == transitions_[i - 1]) {
      const Transition& t = transitions_[i];
      throw ValidationError("duplicate transition: " + states_[t.src] + " --" +
                            alphabet_[t.letter].text() + "--> " + states_[t.dst]);
    }
  a.transitions_ = std::move(transitions_);

  // CSR index over (state, letter) cells.
  size_t cells = states_.size() * alphabet_.size();
  a.row_.assign(cells + 1, 0);
  for (const Transition& t : a.transitions_)
    ++a.row_[size_t(t.src) * alphabet_.size() + t.letter + 1];
  for (size_t i = 0; i < cells; ++i) a.row_[i + 1] += a.row_[i];

  a.deterministic_ = true;
  for (size_t i = 0; i < cells; ++i)
    if (a.row_[i + 1] - a.row_[i] != 1) {
      a.deterministic_ = false;
      break;
    }

  // Acceptance references must stay inside the automaton.
  uint32_t n = static_cast<uint32_t>(states_.size());
  auto check_set = [&](const StateSet& s, const char* what) {
    if (s.universe() != n)
      throw ValidationError(std::string(what) + ": state set sized for a different automaton");
  };
  if (auto* s = std::get_if<SafetyAcc>(&a.acceptance_)) {
    check_set(s->safe, "safety F");
  } else if (auto* r = std::get_if<ReachabilityAcc>(&a.acceptance_)) {
    check_set(r->target, "reachability F");
  } else if (auto* p = std::get_if<ParityAcc>(&a.acceptance_)) {
    if (p->color.size() != states_.size())
      throw ValidationError("parity coloring must assign a color to every state");
  } else if (auto* ex = std::get_if<WeakMullerExplicit>(&a.acceptance_)) {
    std::unordered_set<StateSet, StateSetHash> seen;
    for (const StateSet& f : ex->sets) {
      check_set(f, "weak Muller set");
      if (!seen.insert(f).second)
        throw ValidationError("explicit weak Muller condition lists a duplicate set");
    }
  } else if (auto* el = std::get_if<WeakMullerFormula>(&a.acceptance_)) {
    a.compiled_ = CompiledFormula(el->formula, a.state_index_map());
  }

  return a;
}

// --- Word execution ----------------------------------------------------------

std::vector<letter_t> resolve_word(const Automaton& a, std::span<const Letter> word) {
  std::map<Letter, letter_t> idx;
  for (letter_t i = 0; i < a.alphabet().size(); ++i) idx.emplace(a.alphabet()[i], i);
  std::vector<letter_t> out;
  out.reserve(word.size());
  bool pair = a.alphabet().front().is_pair();
  for (const Letter& l : word) {
    if (l.is_pair() != pair)
      throw ValidationError("letter arity mismatch: '" + l.text() + "' vs automaton alphabet");
    auto it = idx.find(l);
    if (it == idx.end()) throw ValidationError("unknown letter: " + l.text());
    out.push_back(it->second);
  }
  return out;
}

std::pair<state_t, StateSet> run_det(const Automaton& a, std::span<const Letter> word) {
  if (!a.deterministic())
    throw DomainError("run_det requires a deterministic complete automaton");
  std::vector<letter_t> w = resolve_word(a, word);
  StateSet visited(static_cast<uint32_t>(a.num_states()));
  state_t q = a.initial();
  visited.insert(q);
  for (letter_t l : w) {
    q = a.step(q, l);
    visited.insert(q);
  }
  return {q, visited};
}

}  // namespace wmdelay
