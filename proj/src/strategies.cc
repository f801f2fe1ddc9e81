#include "wmdelay/strategies.hh"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "wmdelay/error.hh"
#include "wmdelay/jpair.hh"
#include "wmdelay/rng.hh"

namespace wmdelay {

namespace {

std::string bit_token(uint64_t v) { return v ? "1" : "0"; }

// --- copy check ---------------------------------------------------------------

class OCopyCheck final : public Strategy {
 public:
  explicit OCopyCheck(uint32_t n) : n_(n) {}
  std::string name() const override { return "o-copycheck"; }
  std::string next(const PlayHistory& h) override {
    size_t t = h.outputs.size();
    if (t < n_) {
      if (h.inputs.size() <= t + n_)
        throw StrategyError("o-copycheck: insufficient lookahead, alpha(" +
                            std::to_string(t + n_) + ") not yet visible");
      return h.inputs[t + n_];
    }
    return "0";
  }
  uint64_t fingerprint() const override { return 0; }  // phase is in the queue

 private:
  uint32_t n_;
};

// --- bad-j-pair game ------------------------------------------------------------

RankedWord parse_ranked(const std::vector<std::string>& toks, size_t from, size_t to,
                        uint32_t n) {
  RankedWord w{{}, n};
  for (size_t i = from; i < to; ++i) {
    int v = std::stoi(toks[i]);
    w.letters.push_back(static_cast<uint8_t>(v));
  }
  return w;
}

class OPn final : public Strategy {
 public:
  OPn(uint32_t n, bool lenient) : n_(n), lenient_(lenient) {}
  std::string name() const override { return lenient_ ? "o-pn-lenient" : "o-pn"; }
  void reset() override { moves_ = 0; }
  std::string next(const PlayHistory& h) override {
    if (moves_++ > 0) return "0";
    RankedWord buffered = parse_ranked(h.inputs, 1, h.inputs.size(), n_);
    if (auto w = first_bad_jpair(buffered)) return std::to_string(w->j);
    if (lenient_ && h.inputs.size() > 1) return h.inputs[1];
    if (lenient_) return "0";
    throw StrategyError(
        "o-pn: no bad j-pair in the buffered input (insufficient lookahead, need k >= 2^n + 1)");
  }
  uint64_t fingerprint() const override { return std::min<uint64_t>(moves_, 1); }

 private:
  uint32_t n_;
  bool lenient_;
  uint64_t moves_ = 0;
};

class IPnSpoiler final : public Strategy {
 public:
  explicit IPnSpoiler(uint32_t n) : n_(n), free_(jpair_free_word(n)) {}
  std::string name() const override { return "i-pn-spoiler"; }
  void reset() override {
    pos_ = 0;
    fixed_.reset();
  }
  std::string next(const PlayHistory& h) override {
    size_t p = pos_++;
    if (p == 0) return "0";  // sentinel: the pair is hunted from alpha(1) on
    if (p <= free_.letters.size()) return std::to_string(free_.letters[p - 1]);
    if (!fixed_ && !h.outputs.empty())
      fixed_ = (static_cast<uint32_t>(std::stoi(h.outputs[0])) + 1) % n_;
    return fixed_ ? std::to_string(*fixed_) : "0";
  }
  uint64_t fingerprint() const override {
    uint64_t phase = std::min<uint64_t>(pos_, free_.letters.size() + 2);
    return phase * (n_ + 2) + (fixed_ ? *fixed_ + 1 : 0);
  }

 private:
  uint32_t n_;
  RankedWord free_;
  size_t pos_ = 0;
  std::optional<uint32_t> fixed_;
};

// --- theorem-scale game --------------------------------------------------------
//
// Output plans are finite token tapes followed by a periodic all-zero tail;
// the fingerprint is the tape position (capped into the tail period).

class PlannedOutput : public Strategy {
 public:
  explicit PlannedOutput(uint32_t n) : n_(n) {}
  void reset() override {
    pos_ = 0;
    plan_.clear();
    planned_ = false;
  }
  std::string next(const PlayHistory& h) override {
    if (!planned_) {
      plan_ = make_plan(h);
      planned_ = true;
    }
    size_t p = pos_++;
    if (p < plan_.size()) return plan_[p];
    return (p - plan_.size()) % (n_ + 1) == n_ ? "#" : "0";
  }
  uint64_t fingerprint() const override {
    if (pos_ <= plan_.size()) return pos_;
    return plan_.size() + 1 + (pos_ - plan_.size()) % (n_ + 1);
  }

 protected:
  virtual std::vector<std::string> make_plan(const PlayHistory& h) = 0;

  // Letter tokens of the output block for value v (least significant first).
  void append_block(std::vector<std::string>& plan, uint64_t v, const std::string& sep) const {
    for (uint32_t k = 0; k < n_; ++k) plan.push_back(bit_token((v >> k) & 1));
    plan.push_back(sep);
  }

  uint32_t n_;

 private:
  std::vector<std::string> plan_;
  bool planned_ = false;
  size_t pos_ = 0;
};

// Parses the buffered input into block values; nullopt when the buffered
// prefix is not a valid encoding.
std::optional<std::vector<uint64_t>> parse_blocks(const std::vector<std::string>& in,
                                                  uint32_t n) {
  std::vector<uint64_t> xs;
  size_t blocks = in.size() / (n + 1);
  for (size_t b = 0; b < blocks; ++b) {
    uint64_t v = 0;
    for (uint32_t k = 0; k < n; ++k) {
      const std::string& t = in[b * (n + 1) + k];
      if (t != "0" && t != "1") return std::nullopt;
      v |= uint64_t(t == "1") << k;
    }
    if (in[b * (n + 1) + n] != "#") return std::nullopt;
    xs.push_back(v);
  }
  return xs;
}

class OThm41 final : public PlannedOutput {
 public:
  explicit OThm41(uint32_t n) : PlannedOutput(n) {
    if (n > 7) throw DomainError("o-thm41 is feasible for n <= 7 only");
  }
  std::string name() const override { return "o-thm41"; }

 protected:
  std::vector<std::string> make_plan(const PlayHistory& h) override {
    std::vector<std::string> plan;
    auto xs = parse_blocks(h.inputs, n_);
    if (!xs) return plan;  // invalid input: any valid output wins via q_acc
    // Hunt a bad pair in x_1 x_2 ...
    RankedWord seq{{}, uint32_t(1) << n_};
    for (size_t i = 1; i < xs->size(); ++i)
      seq.letters.push_back(static_cast<uint8_t>((*xs)[i]));
    auto wit = first_bad_jpair(seq);
    if (!wit)
      throw StrategyError(
          "o-thm41: no bad pair among buffered numbers (insufficient lookahead)");
    uint64_t y0 = wit->j;
    size_t jb = wit->p + 1, jb2 = wit->p2 + 1;  // block indices of the pair
    append_block(plan, y0, "#");
    for (size_t i = 1; i <= jb2; ++i) {
      // The separator closing block i-1 marks block i.
      plan.back() = (i == jb || i == jb2) ? "m" : "#";
      uint64_t yi = (i > jb && i < jb2) ? y0 - (*xs)[i] : 0;
      append_block(plan, yi, "#");
    }
    return plan;
  }
};

class OThm41RandomValid final : public PlannedOutput {
 public:
  OThm41RandomValid(uint32_t n, uint64_t seed) : PlannedOutput(n), seed_(seed) {}
  std::string name() const override { return "o-thm41-random"; }

 protected:
  std::vector<std::string> make_plan(const PlayHistory&) override {
    Rng rng(seed_);
    std::vector<std::string> plan;
    size_t jb = 1 + rng.below(3), jb2 = jb + 1 + rng.below(3);
    append_block(plan, rng.below(uint64_t(1) << n_), "#");
    for (size_t i = 1; i <= jb2; ++i) {
      plan.back() = (i == jb || i == jb2) ? "m" : "#";
      append_block(plan, rng.below(uint64_t(1) << n_), "#");
    }
    return plan;
  }

 private:
  uint64_t seed_;
};

// Echoes the consumed input bit and marks the first two separators.
class OThm41Greedy final : public Strategy {
 public:
  explicit OThm41Greedy(uint32_t n) : n_(n) {}
  std::string name() const override { return "o-thm41-greedy"; }
  void reset() override {
    pos_ = 0;
    marks_ = 0;
  }
  std::string next(const PlayHistory& h) override {
    size_t p = pos_++;
    if (p % (n_ + 1) == n_) {
      if (marks_ < 2) {
        ++marks_;
        return "m";
      }
      return "#";
    }
    const std::string& in = h.inputs[h.outputs.size()];
    return (in == "0" || in == "1") ? in : "0";
  }
  uint64_t fingerprint() const override { return (pos_ % (n_ + 1)) * 4 + marks_; }

 private:
  uint32_t n_;
  size_t pos_ = 0;
  uint32_t marks_ = 0;
};

class IThm41Spoiler final : public Strategy {
 public:
  explicit IThm41Spoiler(uint32_t n) : n_(n), free_(jpair_free_word(uint32_t(1) << n)) {
    if (n > 4) throw DomainError("i-thm41-spoiler is feasible for n <= 4 only");
  }
  std::string name() const override { return "i-thm41-spoiler"; }
  void reset() override {
    pos_ = 0;
    fixed_.reset();
  }
  std::string next(const PlayHistory& h) override {
    size_t p = pos_++;
    size_t block = p / (n_ + 1), off = p % (n_ + 1);
    if (off == n_) return "#";
    uint64_t value = 0;
    if (block == 0) {
      value = 0;  // x_0 is not hunted
    } else if (block <= free_.letters.size()) {
      value = free_.letters[block - 1];
    } else {
      if (!fixed_ && h.outputs.size() >= n_) {
        uint64_t y0 = 0;
        for (uint32_t k = 0; k < n_; ++k)
          y0 |= uint64_t(h.outputs[k] == "1") << k;
        fixed_ = (y0 + 1) % (uint64_t(1) << n_);
      }
      value = fixed_.value_or(0);
    }
    return bit_token((value >> off) & 1);
  }
  uint64_t fingerprint() const override {
    uint64_t cap = (free_.letters.size() + 2) * (n_ + 1);
    uint64_t phase = pos_ < cap ? pos_ : cap + pos_ % (n_ + 1);
    return phase * ((uint64_t(1) << n_) + 1) + (fixed_ ? *fixed_ + 1 : 0);
  }

 private:
  uint32_t n_;
  RankedWord free_;
  size_t pos_ = 0;
  std::optional<uint64_t> fixed_;
};

class IThm41RandomValid final : public Strategy {
 public:
  IThm41RandomValid(uint32_t n, uint64_t seed, uint32_t blocks) : n_(n) {
    Rng rng(seed);
    for (uint32_t b = 0; b < blocks; ++b) {
      uint64_t v = rng.below(uint64_t(1) << n);
      for (uint32_t k = 0; k < n; ++k) tape_.push_back(bit_token((v >> k) & 1));
      tape_.push_back("#");
    }
  }
  std::string name() const override { return "i-thm41-random"; }
  void reset() override { pos_ = 0; }
  std::string next(const PlayHistory&) override {
    std::string tok = tape_[pos_ % tape_.size()];
    ++pos_;
    return tok;
  }
  uint64_t fingerprint() const override { return pos_ % tape_.size(); }

 private:
  uint32_t n_;
  std::vector<std::string> tape_;
  size_t pos_ = 0;
};

// --- generic -------------------------------------------------------------------

class RandomTape final : public Strategy {
 public:
  RandomTape(std::vector<std::string> tokens, uint64_t seed, uint32_t period)
      : tokens_(std::move(tokens)) {
    Rng rng(seed);
    for (uint32_t i = 0; i < period; ++i) tape_.push_back(tokens_[rng.below(tokens_.size())]);
  }
  std::string name() const override { return "random"; }
  void reset() override { pos_ = 0; }
  std::string next(const PlayHistory&) override {
    std::string tok = tape_[pos_ % tape_.size()];
    ++pos_;
    return tok;
  }
  uint64_t fingerprint() const override { return pos_ % tape_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::string> tape_;
  size_t pos_ = 0;
};

class ConstToken final : public Strategy {
 public:
  explicit ConstToken(std::string tok) : tok_(std::move(tok)) {}
  std::string name() const override { return "const:" + tok_; }
  std::string next(const PlayHistory&) override { return tok_; }

 private:
  std::string tok_;
};

class ArenaReplay final : public Strategy {
 public:
  ArenaReplay(std::shared_ptr<const Automaton> parity, std::shared_ptr<const ArenaGame> arena,
              std::shared_ptr<const BuchiSolution> sol, Player player)
      : parity_(std::move(parity)), arena_(std::move(arena)), sol_(std::move(sol)),
        player_(player) {
    for (uint32_t v = 0; v < arena_->graph.size(); ++v)
      node_of_[key(arena_->node_state[v], arena_->node_queue[v])] = v;
    for (letter_t l = 0; l < parity_->alphabet().size(); ++l)
      letter_of_[{parity_->alphabet()[l].input(), parity_->alphabet()[l].output()}] = l;
  }
  std::string name() const override {
    return player_ == Player::O ? "solver-o" : "solver-i";
  }
  void reset() override {
    state_ = parity_->initial();
    consumed_ = 0;
    queue_id_ = 0;
    queue_.clear();
  }
  std::string next(const PlayHistory& h) override {
    sync(h);
    auto it = node_of_.find(key(state_, queue_id_));
    if (it == node_of_.end())
      throw StrategyError("solver strategy: current position is outside the solved arena");
    uint32_t node = it->second;
    uint32_t e = sol_->strategy[node];
    const auto& g = arena_->graph;
    if (sol_->winner[node] != static_cast<uint8_t>(player_) || e == UINT32_MAX)
      e = 0;  // outside our winning region: any legal move
    bool o_turn = g.owner[node] == 0;
    return o_turn ? arena_->sigma_o[e] : arena_->sigma_i[e];
  }
  uint64_t fingerprint() const override { return state_; }

 private:
  uint64_t key(state_t q, uint64_t queue) const {
    return queue * parity_->num_states() + q;
  }
  // Replay the automaton over letters consumed since the last call and rebuild
  // the canonical queue id from the pending inputs.
  void sync(const PlayHistory& h) {
    while (consumed_ < h.outputs.size()) {
      Letter l = Letter::pair(h.inputs[consumed_], h.outputs[consumed_]);
      state_ = parity_->step(state_, letter_of_.at({l.input(), l.output()}));
      ++consumed_;
    }
    // Canonical queue id: offset[len] + base-|sigma_i| value, oldest first.
    uint64_t base = arena_->sigma_i.size();
    size_t len = h.inputs.size() - consumed_;
    uint64_t value = 0, offset = 0, pw = 1;
    for (size_t i = 0; i < len; ++i) {
      const std::string& tok = h.inputs[consumed_ + i];
      uint64_t d = std::lower_bound(arena_->sigma_i.begin(), arena_->sigma_i.end(), tok) -
                   arena_->sigma_i.begin();
      value = value * base + d;
      offset += pw;
      pw *= base;
    }
    queue_id_ = offset + value;
  }

  std::shared_ptr<const Automaton> parity_;
  std::shared_ptr<const ArenaGame> arena_;
  std::shared_ptr<const BuchiSolution> sol_;
  Player player_;
  std::unordered_map<uint64_t, uint32_t> node_of_;
  std::map<std::pair<std::string, std::string>, letter_t> letter_of_;
  state_t state_ = 0;
  size_t consumed_ = 0;
  uint64_t queue_id_ = 0;
  std::vector<uint32_t> queue_;
};

uint32_t parse_param(const std::string& spec, const std::string& name) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw DomainError("strategy '" + name + "' needs a parameter, e.g. " + name + ":2");
  return static_cast<uint32_t>(std::stoul(spec.substr(colon + 1)));
}

}  // namespace

StrategyPtr o_copycheck(uint32_t n) { return std::make_unique<OCopyCheck>(n); }
StrategyPtr o_pn(uint32_t n, bool lenient) { return std::make_unique<OPn>(n, lenient); }
StrategyPtr i_pn_spoiler(uint32_t n) { return std::make_unique<IPnSpoiler>(n); }
StrategyPtr o_thm41(uint32_t n) { return std::make_unique<OThm41>(n); }
StrategyPtr i_thm41_spoiler(uint32_t n) { return std::make_unique<IThm41Spoiler>(n); }
StrategyPtr o_thm41_random_valid(uint32_t n, uint64_t seed) {
  return std::make_unique<OThm41RandomValid>(n, seed);
}
StrategyPtr o_thm41_greedy(uint32_t n) { return std::make_unique<OThm41Greedy>(n); }
StrategyPtr i_thm41_random_valid(uint32_t n, uint64_t seed, uint32_t blocks) {
  return std::make_unique<IThm41RandomValid>(n, seed, blocks);
}
StrategyPtr random_token_strategy(std::vector<std::string> tokens, uint64_t seed,
                                  uint32_t period) {
  return std::make_unique<RandomTape>(std::move(tokens), seed, period);
}
StrategyPtr const_strategy(std::string token) {
  return std::make_unique<ConstToken>(std::move(token));
}
StrategyPtr arena_strategy(std::shared_ptr<const Automaton> parity,
                           std::shared_ptr<const ArenaGame> arena,
                           std::shared_ptr<const BuchiSolution> solution, Player player) {
  return std::make_unique<ArenaReplay>(std::move(parity), std::move(arena),
                                       std::move(solution), player);
}

StrategyPtr make_strategy(const std::string& spec, bool for_output, const Automaton& a, int k,
                          uint64_t seed, size_t node_budget) {
  std::string head = spec.substr(0, spec.find(':'));
  if (head == "const") {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw DomainError("const strategy needs const:<letter>");
    return const_strategy(spec.substr(colon + 1));
  }
  if (head == "random") {
    AlphabetSplit split = split_product_alphabet(a);
    uint32_t period = 64;
    if (spec.find(':') != std::string::npos) period = parse_param(spec, "random");
    return random_token_strategy(for_output ? split.sigma_o : split.sigma_i, seed, period);
  }
  if (head == "solver") {
    auto parity = std::make_shared<Automaton>(normalize_for_delay(a));
    auto arena = std::make_shared<ArenaGame>(build_arena(*parity, DelaySpec{k}, node_budget));
    auto sol = std::make_shared<BuchiSolution>(solve_buchi(arena->graph));
    return arena_strategy(parity, arena, sol, for_output ? Player::O : Player::I);
  }
  if (!for_output) {
    if (head == "pn-spoiler") return i_pn_spoiler(parse_param(spec, head));
    if (head == "thm41-spoiler") return i_thm41_spoiler(parse_param(spec, head));
    if (head == "thm41-random") return i_thm41_random_valid(parse_param(spec, head), seed);
  } else {
    if (head == "copycheck") return o_copycheck(parse_param(spec, head));
    if (head == "pn") return o_pn(parse_param(spec, head), false);
    if (head == "pn-lenient") return o_pn(parse_param(spec, head), true);
    if (head == "thm41") return o_thm41(parse_param(spec, head));
    if (head == "thm41-greedy") return o_thm41_greedy(parse_param(spec, head));
    if (head == "thm41-random") return o_thm41_random_valid(parse_param(spec, head), seed);
  }
  throw DomainError("unknown strategy spec: " + spec);
}

}  // namespace wmdelay
