#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wmdelay/delay.hh"
#include "wmdelay/error.hh"
#include "wmdelay/gadgets.hh"
#include "wmdelay/hoa.hh"
#include "wmdelay/jpair.hh"
#include "wmdelay/json_io.hh"
#include "wmdelay/report.hh"
#include "wmdelay/simulate.hh"
#include "wmdelay/strategies.hh"
#include "wmdelay/translate.hh"
#include "wmdelay/verify.hh"

namespace {

using namespace wmdelay;

size_t node_budget_default() {
  if (const char* env = std::getenv("DELAYGAME_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw DomainError("DELAYGAME_BUDGET must be a positive integer");
  }
  return kDefaultNodeBudget;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

void emit_report(const RunReport& rep, bool json) {
  std::cout << (json ? rep.to_json() : rep.to_markdown());
}

// Words on the command line: letters separated by spaces or commas; pair
// letters written in/out. A separator-free token over a plain alphabet is
// split into single-character letters.
std::vector<Letter> parse_word(const Automaton& a, const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);

  bool pair_alpha = a.alphabet().front().is_pair();
  std::vector<Letter> out;
  auto to_letter = [&](const std::string& t) {
    auto slash = t.find('/');
    if (pair_alpha) {
      if (slash == std::string::npos)
        throw ParseError("pair alphabet needs letters written in/out: '" + t + "'");
      return Letter::pair(t.substr(0, slash), t.substr(slash + 1));
    }
    return Letter::plain(t);
  };
  if (toks.size() == 1 && !pair_alpha && !a.letter_index(Letter::plain(toks[0]))) {
    for (char c : toks[0]) out.push_back(Letter::plain(std::string(1, c)));
    return out;
  }
  for (const std::string& t : toks) out.push_back(to_letter(t));
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for weak Muller automata and delay games"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable report on stdout");
  uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for all randomized commands");

  // --- gen -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate gadget automata");
  gen->require_subcommand(1);
  struct {
    uint32_t n = 1;
    std::string out;
    std::string repr = "explicit";
    bool paper_formula = false;
    uint64_t value = 0;
    std::string decode;
  } g;
  auto add_gen = [&](const char* name, const char* help, bool needs_n = true) {
    auto* cmd = gen->add_subcommand(name, help);
    if (needs_n) cmd->add_option("--n", g.n, "gadget parameter")->required();
    cmd->add_option("-o,--output", g.out, "output file (default stdout)");
    return cmd;
  };
  auto* gen_bitstore = add_gen("bitstore", "n-bit store gadget");
  auto* gen_copycheck = add_gen("copycheck", "copy-check weak Muller automaton");
  auto* gen_pn = add_gen("pn", "bad-j-pair automaton");
  gen_pn->add_option("--repr", g.repr, "explicit | reach")
      ->check(CLI::IsMember({"explicit", "reach"}));
  auto* gen_add = add_gen("addgadget", "block adder gadget");
  auto* gen_thm41 = add_gen("thm41", "theorem-scale bad-pair automaton");
  gen_thm41->add_flag("--paper-formula", g.paper_formula,
                      "use the published formula without the final-carry strengthening");
  auto* gen_guess = add_gen("guessbit", "non-deterministic bit sampler");
  auto* gen_addr = add_gen("addrcheck", "address increment checker");
  auto* gen_super = add_gen("superblock", "superblock codec", true);
  gen_super->add_option("--value", g.value, "value to encode");
  gen_super->add_option("--decode", g.decode, "word to decode instead");

  // --- translate ----------------------------------------------------------------
  auto* tr = app.add_subcommand("translate", "weak Muller to parity translation");
  struct {
    std::string automaton;
    std::string out;
    bool hoa = false;
  } t;
  tr->add_option("--automaton", t.automaton, "input automaton JSON")->required();
  tr->add_option("-o,--output", t.out, "output file (default stdout)");
  tr->add_flag("--hoa", t.hoa, "emit HOA text instead of JSON");

  // --- member ---------------------------------------------------------------------
  auto* mem = app.add_subcommand("member", "lasso membership check");
  struct {
    std::string automaton, spoke, cycle;
  } m;
  mem->add_option("--automaton", m.automaton)->required();
  mem->add_option("--spoke", m.spoke, "finite prefix u (may be empty)");
  mem->add_option("--cycle", m.cycle, "cycle v (non-empty)")->required();

  // --- solve / lookahead ------------------------------------------------------------
  auto* so = app.add_subcommand("solve", "solve the delay game at fixed lookahead");
  struct {
    std::string automaton;
    int k = 1;
    size_t budget = 0;
  } s;
  so->add_option("--automaton", s.automaton)->required();
  so->add_option("--lookahead", s.k, "constant lookahead k")->required();
  so->add_option("--budget", s.budget, "arena node budget");

  auto* look = app.add_subcommand("lookahead", "minimal winning lookahead search");
  struct {
    std::string automaton;
    int max = 8;
    size_t budget = 0;
  } lk;
  look->add_option("--automaton", lk.automaton)->required();
  look->add_option("--max", lk.max, "largest lookahead to try")->required();
  look->add_option("--budget", lk.budget, "arena node budget");

  // --- play -----------------------------------------------------------------------
  auto* pl = app.add_subcommand("play", "simulate a delay game round by round");
  struct {
    std::string automaton, strat_i = "random", strat_o = "random";
    int k = 1;
    size_t rounds = 256;
    size_t budget = 0;
  } p;
  pl->add_option("--automaton", p.automaton)->required();
  pl->add_option("--lookahead", p.k)->required();
  pl->add_option("--strategy-i", p.strat_i, "input player strategy spec");
  pl->add_option("--strategy-o", p.strat_o, "output player strategy spec");
  pl->add_option("--rounds", p.rounds, "round budget before UNRESOLVED");
  pl->add_option("--budget", p.budget, "arena node budget (solver strategies)");

  // --- verify ----------------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "combinatorial verification runs");
  ver->require_subcommand(1);
  struct {
    uint32_t n = 2;
    bool exhaustive = false;
    uint64_t samples = 10000;
    uint32_t det = 200, nondet = 100, states = 4;
    std::string automaton;
    std::string family;
    int kmax = 10;
    size_t budget = 0;
  } v;
  auto* vj = ver->add_subcommand("jpair", "length-2^n words all contain a bad j-pair");
  vj->add_option("--n", v.n)->required();
  vj->add_flag("--exhaustive", v.exhaustive);
  vj->add_option("--samples", v.samples);
  auto* vp = ver->add_subcommand("prop24", "both bad-j-pair bullets");
  vp->add_option("--n", v.n)->required();
  vp->add_flag("--exhaustive", v.exhaustive);
  vp->add_option("--samples", v.samples);
  auto* vl = ver->add_subcommand("lemma33", "translation preserves the language");
  vl->add_option("--det", v.det, "number of deterministic automata");
  vl->add_option("--nondet", v.nondet, "number of non-deterministic automata");
  vl->add_option("--states", v.states, "max states of deterministic samples");
  auto* vm = ver->add_subcommand("monotone", "lookahead monotonicity sweep");
  vm->add_option("--family", v.family, "copycheck | pn-explicit | pn-reach | thm41 | file:PATH")
      ->required();
  vm->add_option("--n", v.n);
  vm->add_option("--kmax", v.kmax);
  vm->add_option("--budget", v.budget);

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();

    if (gen->parsed()) {
      if (gen_super->parsed()) {
        RunReport rep("gen superblock");
        rep.param("n", static_cast<long long>(g.n));
        if (!g.decode.empty()) {
          uint64_t value = superblock_decode(g.n, g.decode);
          rep.param("word", g.decode);
          rep.columns({"value"});
          rep.row({std::to_string(value)});
        } else {
          std::string word = superblock_encode(g.n, g.value);
          rep.param("value", static_cast<long long>(g.value));
          rep.columns({"word"});
          rep.row({word});
          if (!g.out.empty()) write_output(word + "\n", g.out);
        }
        rep.timing_ms(ms_since(t0));
        emit_report(rep, json);
        return 0;
      }
      Automaton a = gen_bitstore->parsed()    ? bit_store(g.n)
                    : gen_copycheck->parsed() ? copy_check(g.n)
                    : gen_pn->parsed() ? (g.repr == "reach" ? pn_reach(g.n)
                                                            : pn_explicit_wdma(g.n))
                    : gen_add->parsed()   ? add_gadget(g.n)
                    : gen_guess->parsed() ? guess_bit(g.n)
                    : gen_addr->parsed()  ? addr_update_checker(g.n)
                                          : thm41_automaton(g.n, {!g.paper_formula});
      write_output(serialize_automaton(a), g.out);
      return 0;
    }

    if (tr->parsed()) {
      Automaton a = load_automaton_file(t.automaton);
      Translated trl = weak_muller_to_parity(a);
      ColorProfile prof = color_profile(trl);
      if (t.hoa) {
        write_output(to_hoa(trl.automaton, "translation of " + t.automaton), t.out);
      } else {
        write_output(serialize_automaton(trl.automaton), t.out);
      }
      RunReport rep("translate");
      rep.param("automaton", t.automaton);
      rep.columns({"states", "color1", "color2", "max_occ_growth"});
      rep.row({std::to_string(prof.num_states), std::to_string(prof.color1_states),
               std::to_string(prof.color2_states), std::to_string(prof.max_occ_growth)});
      rep.timing_ms(ms_since(t0));
      if (t.out.empty() || t.out == "-")
        std::cerr << (json ? rep.to_json() : rep.to_markdown());
      else
        emit_report(rep, json);
      return 0;
    }

    if (mem->parsed()) {
      Automaton a = load_automaton_file(m.automaton);
      Lasso lasso{parse_word(a, m.spoke), parse_word(a, m.cycle)};
      bool verdict = lasso_accepts(a, lasso);
      RunReport rep("member");
      rep.param("automaton", m.automaton);
      rep.param("spoke", m.spoke);
      rep.param("cycle", m.cycle);
      rep.columns({"accepted"});
      rep.row({verdict ? "true" : "false"});
      if (a.deterministic() && is_weak_muller(a.acceptance())) {
        auto [acc, occ] = lasso_run_det(a, lasso);
        std::string names;
        for (uint32_t q : occ.elements()) {
          if (!names.empty()) names += " ";
          names += a.state_name(q);
        }
        rep.param("stabilized_occurrence_set", names);
      }
      rep.verdict(verdict ? "ACCEPT" : "REJECT");
      rep.timing_ms(ms_since(t0));
      emit_report(rep, json);
      return 0;
    }

    if (so->parsed()) {
      Automaton a = load_automaton_file(s.automaton);
      size_t budget = s.budget ? s.budget : node_budget_default();
      DelayResult r = solve_delay(a, s.k, budget);
      RunReport rep("solve");
      rep.param("automaton", s.automaton);
      rep.param("lookahead", s.k);
      rep.param("budget", static_cast<long long>(budget));
      rep.columns({"winner", "arena_nodes", "parity_states"});
      rep.row({r.winner == Player::O ? "O" : "I", std::to_string(r.arena_nodes),
               std::to_string(r.automaton_states)});
      rep.verdict(std::string("winner: ") + (r.winner == Player::O ? "O" : "I"));
      rep.timing_ms(ms_since(t0));
      emit_report(rep, json);
      return 0;
    }

    if (look->parsed()) {
      Automaton a = load_automaton_file(lk.automaton);
      size_t budget = lk.budget ? lk.budget : node_budget_default();
      LookaheadReport r = minimal_lookahead(a, lk.max, budget);
      RunReport rep("lookahead");
      rep.param("automaton", lk.automaton);
      rep.param("max", lk.max);
      rep.columns({"minimal_k", "largest_decided", "budget_hit"});
      rep.row({r.minimal_k ? std::to_string(*r.minimal_k) : "none",
               std::to_string(r.largest_decided), r.budget_hit ? "true" : "false"});
      rep.verdict(r.minimal_k ? "minimal lookahead " + std::to_string(*r.minimal_k)
                              : "no winning lookahead in range");
      rep.timing_ms(ms_since(t0));
      emit_report(rep, json);
      return 0;
    }

    if (pl->parsed()) {
      Automaton a = load_automaton_file(p.automaton);
      size_t budget = p.budget ? p.budget : node_budget_default();
      StrategyPtr si = make_strategy(p.strat_i, false, a, p.k, seed, budget);
      StrategyPtr so_ = make_strategy(p.strat_o, true, a, p.k, seed + 1, budget);
      PlayTranscript trp = simulate_play(a, p.k, *si, *so_, p.rounds);
      RunReport rep("play");
      rep.param("automaton", p.automaton);
      rep.param("lookahead", p.k);
      rep.param("strategy_i", p.strat_i);
      rep.param("strategy_o", p.strat_o);
      rep.param("seed", static_cast<long long>(seed));
      rep.columns({"round", "inputs", "output"});
      size_t show = std::min<size_t>(trp.rounds.size(), 24);
      for (size_t i = 0; i < show; ++i) {
        std::string ins;
        for (const auto& tok : trp.rounds[i].inputs) {
          if (!ins.empty()) ins += " ";
          ins += tok;
        }
        rep.row({std::to_string(i), ins, trp.rounds[i].output});
      }
      rep.param("rounds_played", static_cast<long long>(trp.rounds.size()));
      rep.verdict(trp.verdict == Verdict::Accept   ? "ACCEPT"
                  : trp.verdict == Verdict::Reject ? "REJECT"
                                                   : "UNRESOLVED");
      rep.timing_ms(ms_since(t0));
      emit_report(rep, json);
      return 0;
    }

    if (ver->parsed()) {
      if (vj->parsed() || vp->parsed()) {
        Prop24Mode mode;
        mode.exhaustive = v.exhaustive;
        mode.samples = v.samples;
        mode.seed = seed;
        Prop24Report r = verify_prop24(v.n, mode);
        RunReport rep(vj->parsed() ? "verify jpair" : "verify prop24");
        rep.param("n", static_cast<long long>(v.n));
        rep.param("mode", r.exhaustive ? "exhaustive" : "sampled");
        rep.columns({"words_checked", "words_with_pair", "free_word_length",
                     "free_word_clean"});
        rep.row({std::to_string(r.words_checked), std::to_string(r.words_with_pair),
                 std::to_string(r.free_word_length), r.free_word_clean ? "true" : "false"});
        bool pass = r.words_checked == r.words_with_pair && r.free_word_clean;
        rep.verdict(std::to_string(r.words_with_pair) + "/" + std::to_string(r.words_checked) +
                    " words of length " + std::to_string(1u << v.n) +
                    " contain a bad j-pair; witness word " +
                    (r.free_word_clean ? "clean" : "NOT clean"));
        rep.timing_ms(r.millis);
        emit_report(rep, json);
        return pass ? 0 : 1;
      }
      if (vl->parsed()) {
        Lemma33Report r = verify_lemma33(v.det, v.nondet, v.states, seed);
        RunReport rep("verify lemma33");
        rep.param("det", static_cast<long long>(v.det));
        rep.param("nondet", static_cast<long long>(v.nondet));
        rep.param("seed", static_cast<long long>(seed));
        rep.columns({"lassos_compared", "mismatches"});
        rep.row({std::to_string(r.lassos_compared), std::to_string(r.mismatches)});
        rep.verdict(r.mismatches == 0 ? "translation agrees on all lassos"
                                      : "MISMATCHES FOUND");
        rep.timing_ms(r.millis);
        emit_report(rep, json);
        return r.mismatches == 0 ? 0 : 1;
      }
      // monotone
      Automaton a = [&]() {
        if (v.family.rfind("file:", 0) == 0) return load_automaton_file(v.family.substr(5));
        if (v.family == "copycheck") return copy_check(v.n);
        if (v.family == "pn-explicit") return pn_explicit_wdma(v.n);
        if (v.family == "pn-reach") return pn_reach(v.n);
        if (v.family == "thm41") return thm41_automaton(v.n, {});
        throw DomainError("unknown family: " + v.family);
      }();
      size_t budget = v.budget ? v.budget : node_budget_default();
      MonotoneReport r = verify_monotone(a, v.kmax, budget);
      RunReport rep("verify monotone");
      rep.param("family", v.family);
      rep.param("n", static_cast<long long>(v.n));
      rep.columns({"k", "winner"});
      for (size_t i = 0; i < r.ks.size(); ++i)
        rep.row({std::to_string(r.ks[i]), r.o_wins[i] ? "O" : "I"});
      rep.verdict(r.monotone ? "monotone" : "MONOTONICITY VIOLATED");
      rep.timing_ms(r.millis);
      emit_report(rep, json);
      return r.monotone ? 0 : 1;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
