#include "wmdelay/delay.hh"

#include <algorithm>

#include "wmdelay/error.hh"
#include "wmdelay/translate.hh"

namespace wmdelay {

namespace {

// Safety: once the run leaves F acceptance is impossible, so transitions into
// non-F states can be redirected to a fresh rejecting sink; reachability
// dually collapses F into an accepting sink. Both yield colors {1,2} with
// the Büchi reading "color 2 infinitely often".
Automaton collapse_safety(const Automaton& a, const StateSet& safe) {
  Automaton::Builder b;
  for (const std::string& s : a.state_names()) b.add_state(s);
  state_t sink = b.add_state("#sink");
  b.alphabet(a.alphabet());
  if (!safe.test(a.initial()))
    b.initial("#sink");
  else
    b.initial(a.state_name(a.initial()));
  for (state_t q = 0; q < a.num_states(); ++q)
    for (letter_t l = 0; l < a.alphabet().size(); ++l) {
      state_t d = a.step(q, l);
      b.transition(q, l, safe.test(d) ? d : sink);
    }
  for (letter_t l = 0; l < a.alphabet().size(); ++l) b.transition(sink, l, sink);
  ParityAcc p;
  p.color.assign(a.num_states() + 1, 1);
  for (state_t q = 0; q < a.num_states(); ++q)
    if (safe.test(q)) p.color[q] = 2;
  p.color[sink] = 1;
  b.acceptance(std::move(p));
  return b.build();
}

Automaton collapse_reachability(const Automaton& a, const StateSet& target) {
  Automaton::Builder b;
  for (const std::string& s : a.state_names()) b.add_state(s);
  state_t sink = b.add_state("#goal");
  b.alphabet(a.alphabet());
  b.initial(target.test(a.initial()) ? "#goal" : a.state_name(a.initial()));
  for (state_t q = 0; q < a.num_states(); ++q)
    for (letter_t l = 0; l < a.alphabet().size(); ++l) {
      state_t d = a.step(q, l);
      b.transition(q, l, target.test(d) ? sink : d);
    }
  for (letter_t l = 0; l < a.alphabet().size(); ++l) b.transition(sink, l, sink);
  ParityAcc p;
  p.color.assign(a.num_states() + 1, 1);
  p.color[sink] = 2;
  b.acceptance(std::move(p));
  return b.build();
}

}  // namespace

Automaton normalize_for_delay(const Automaton& a) {
  if (!a.deterministic())
    throw DomainError(
        "delay games with non-deterministic winning conditions are out of scope");
  if (is_weak_muller(a.acceptance())) return weak_muller_to_parity(a).automaton;
  if (const auto* p = std::get_if<ParityAcc>(&a.acceptance())) {
    for (uint32_t c : p->color)
      if (c < 1 || c > 2)
        throw DomainError("parity winning conditions must use colors {1, 2}");
    return a;
  }
  if (const auto* s = std::get_if<SafetyAcc>(&a.acceptance()))
    return collapse_safety(a, s->safe);
  return collapse_reachability(a, std::get<ReachabilityAcc>(a.acceptance()).target);
}

DelayResult solve_delay(const Automaton& a, int k, size_t node_budget) {
  Automaton parity = normalize_for_delay(a);
  ArenaGame arena = build_arena(parity, DelaySpec{k}, node_budget);
  BuchiSolution sol = solve_buchi(arena.graph);
  return {sol.winner_from(arena.graph.initial), arena.graph.size(), parity.num_states()};
}

LookaheadReport minimal_lookahead(const Automaton& a, int k_max, size_t node_budget) {
  if (k_max < 1) throw DomainError("minimal_lookahead requires k_max >= 1");
  Automaton parity = normalize_for_delay(a);
  auto o_wins = [&](int k) {
    ArenaGame arena = build_arena(parity, DelaySpec{k}, node_budget);
    BuchiSolution sol = solve_buchi(arena.graph);
    return sol.winner_from(arena.graph.initial) == Player::O;
  };

  LookaheadReport rep;
  // Standard lower-bound bisection over the monotone predicate "O wins with
  // lookahead k"; hi = k_max + 1 encodes "no winning k in range".
  int lo = 1, hi = k_max + 1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    bool win;
    try {
      win = o_wins(mid);
    } catch (const ResourceError&) {
      rep.budget_hit = true;
      return rep;
    }
    rep.largest_decided = std::max(rep.largest_decided, mid);
    if (win) {
      rep.certified_o_win = mid;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo <= k_max) {
    rep.minimal_k = lo;
    rep.certified_o_win = lo;
  }
  return rep;
}

}  // namespace wmdelay
