#include "wmdelay/verify.hh"

#include <algorithm>
#include <chrono>

#include "wmdelay/delay.hh"
#include "wmdelay/translate.hh"

namespace wmdelay {

namespace {

std::vector<Letter> binary_alphabet() {
  return {Letter::plain("0"), Letter::plain("1")};
}

WeakMullerExplicit random_condition(uint32_t n, Rng& rng) {
  // Each subset joins the family with probability ~1/3; duplicates are
  // impossible by construction (one draw per subset).
  WeakMullerExplicit ex;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (rng.below(3) != 0) continue;
    StateSet s(n);
    for (uint32_t q = 0; q < n; ++q)
      if ((mask >> q) & 1) s.insert(q);
    ex.sets.push_back(std::move(s));
  }
  return ex;
}

}  // namespace

Automaton random_det_wdma(uint32_t num_states, Rng& rng) {
  Automaton::Builder b;
  for (uint32_t q = 0; q < num_states; ++q) b.add_state("q" + std::to_string(q));
  b.alphabet(binary_alphabet());
  b.initial("q0");
  for (uint32_t q = 0; q < num_states; ++q)
    for (letter_t l = 0; l < 2; ++l)
      b.transition(q, l, static_cast<state_t>(rng.below(num_states)));
  b.acceptance(random_condition(num_states, rng));
  return b.build();
}

Automaton random_wnma(uint32_t num_states, Rng& rng) {
  Automaton::Builder b;
  for (uint32_t q = 0; q < num_states; ++q) b.add_state("q" + std::to_string(q));
  b.alphabet(binary_alphabet());
  b.initial("q0");
  for (uint32_t q = 0; q < num_states; ++q)
    for (letter_t l = 0; l < 2; ++l) {
      state_t first = static_cast<state_t>(rng.below(num_states));
      b.transition(q, l, first);
      if (rng.flip()) {
        state_t second = static_cast<state_t>(rng.below(num_states));
        if (second != first) b.transition(q, l, second);
      }
    }
  b.acceptance(random_condition(num_states, rng));
  return b.build();
}

std::vector<Lasso> all_lassos(const std::vector<Letter>& alphabet, size_t max_u, size_t max_v) {
  std::vector<Lasso> out;
  // Enumerate words up to the larger bound once.
  size_t cap = std::max(max_u, max_v);
  std::vector<std::vector<Letter>> frontier{{}};
  std::vector<std::vector<Letter>> all{{}};
  for (size_t len = 1; len <= cap; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (const Letter& l : alphabet) {
        auto w2 = w;
        w2.push_back(l);
        next.push_back(w2);
      }
    for (const auto& w : next) all.push_back(w);
    frontier = std::move(next);
  }
  for (const auto& u : all) {
    if (u.size() > max_u) continue;
    for (const auto& v : all) {
      if (v.empty() || v.size() > max_v) continue;
      out.push_back(Lasso{u, v});
    }
  }
  return out;
}

Lemma33Report verify_lemma33(uint32_t det_count, uint32_t nondet_count, uint32_t max_states,
                             uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  Lemma33Report rep{0, 0, 0, 0, 0.0};
  std::vector<Lasso> lassos = all_lassos(binary_alphabet(), 3, 3);

  auto check = [&](const Automaton& a) {
    Translated t = weak_muller_to_parity(a);
    for (const Lasso& l : lassos) {
      ++rep.lassos_compared;
      if (lasso_accepts(a, l) != lasso_accepts(t.automaton, l)) ++rep.mismatches;
    }
  };

  for (uint32_t i = 0; i < det_count; ++i) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(max_states));
    check(random_det_wdma(n, rng));
    ++rep.det_automata;
  }
  uint32_t nondet_states = std::min(max_states, 3u);
  for (uint32_t i = 0; i < nondet_count; ++i) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(nondet_states));
    check(random_wnma(n, rng));
    ++rep.nondet_automata;
  }
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
  return rep;
}

MonotoneReport verify_monotone(const Automaton& a, int k_max, size_t node_budget) {
  auto t0 = std::chrono::steady_clock::now();
  MonotoneReport rep{{}, {}, true, 0.0};
  for (int k = 1; k <= k_max; ++k) {
    DelayResult r = solve_delay(a, k, node_budget);
    rep.ks.push_back(k);
    rep.o_wins.push_back(r.winner == Player::O ? 1 : 0);
  }
  for (size_t i = 1; i < rep.o_wins.size(); ++i)
    if (rep.o_wins[i - 1] && !rep.o_wins[i]) rep.monotone = false;
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
  return rep;
}

}  // namespace wmdelay
