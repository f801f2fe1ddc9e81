#include "wmdelay/simulate.hh"

#include <algorithm>
#include <map>
#include <set>

#include "wmdelay/arena.hh"
#include "wmdelay/error.hh"

namespace wmdelay {

PlayTranscript simulate_play(const Automaton& a, int k, Strategy& strat_i, Strategy& strat_o,
                             size_t round_budget) {
  if (k < 1) throw DomainError("simulate_play requires lookahead k >= 1");
  if (!a.deterministic())
    throw DomainError("simulate_play tracks the run of a deterministic automaton");
  AlphabetSplit split = split_product_alphabet(a);
  std::set<std::string> in_ok(split.sigma_i.begin(), split.sigma_i.end());
  std::set<std::string> out_ok(split.sigma_o.begin(), split.sigma_o.end());

  strat_i.reset();
  strat_o.reset();

  std::vector<std::string> inputs, outputs;
  std::vector<Letter> consumed;  // the product word built so far
  state_t run_state = a.initial();

  PlayTranscript tr;

  // Configuration after each round; repetition closes the lasso.
  struct Config {
    state_t state;
    std::vector<std::string> pending;
    uint64_t fp_i, fp_o;
    auto operator<=>(const Config&) const = default;
  };
  std::map<Config, size_t> seen;  // -> number of product letters consumed

  for (size_t round = 0; round < round_budget; ++round) {
    PlayRound pr;
    size_t in_moves = round == 0 ? static_cast<size_t>(k) : 1;
    for (size_t m = 0; m < in_moves; ++m) {
      std::string tok = strat_i.next({inputs, outputs, k});
      if (!in_ok.count(tok))
        throw StrategyError("strategy '" + strat_i.name() + "' emitted letter '" + tok +
                            "' outside the input alphabet in round " + std::to_string(round));
      inputs.push_back(tok);
      pr.inputs.push_back(tok);
    }
    std::string out = strat_o.next({inputs, outputs, k});
    if (!out_ok.count(out))
      throw StrategyError("strategy '" + strat_o.name() + "' emitted letter '" + out +
                          "' outside the output alphabet in round " + std::to_string(round));
    outputs.push_back(out);
    pr.output = out;
    tr.rounds.push_back(std::move(pr));

    // Player O consumes the oldest pending input letter.
    const std::string& in = inputs[outputs.size() - 1];
    Letter l = Letter::pair(in, out);
    consumed.push_back(l);
    run_state = a.step(run_state, *a.letter_index(l));

    Config cfg{run_state,
               {inputs.begin() + outputs.size(), inputs.end()},
               strat_i.fingerprint(),
               strat_o.fingerprint()};
    auto [it, fresh] = seen.emplace(std::move(cfg), consumed.size());
    if (!fresh) {
      size_t cut = it->second;
      tr.lasso.spoke.assign(consumed.begin(), consumed.begin() + cut);
      tr.lasso.cycle.assign(consumed.begin() + cut, consumed.end());
      tr.loop_start = cut;
      tr.verdict = lasso_accepts(a, tr.lasso) ? Verdict::Accept : Verdict::Reject;
      return tr;
    }
  }
  tr.verdict = Verdict::Unresolved;
  return tr;
}

}  // namespace wmdelay
