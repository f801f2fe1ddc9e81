#include "wmdelay/arena.hh"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "wmdelay/error.hh"

namespace wmdelay {

AlphabetSplit split_product_alphabet(const Automaton& a) {
  if (!a.alphabet().front().is_pair())
    throw DomainError("delay games need a product alphabet (input x output letters)");
  AlphabetSplit s;
  for (const Letter& l : a.alphabet()) {
    s.sigma_i.push_back(l.input());
    s.sigma_o.push_back(l.output());
  }
  auto dedup = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(s.sigma_i);
  dedup(s.sigma_o);
  size_t ni = s.sigma_i.size(), no = s.sigma_o.size();
  if (a.alphabet().size() != ni * no)
    throw DomainError("alphabet is not the full product of its components");
  s.pair_index.assign(ni * no, 0);
  std::vector<char> seen(ni * no, 0);
  for (letter_t l = 0; l < a.alphabet().size(); ++l) {
    size_t i = std::lower_bound(s.sigma_i.begin(), s.sigma_i.end(), a.alphabet()[l].input()) -
               s.sigma_i.begin();
    size_t o = std::lower_bound(s.sigma_o.begin(), s.sigma_o.end(), a.alphabet()[l].output()) -
               s.sigma_o.begin();
    s.pair_index[i * no + o] = l;
    seen[i * no + o] = 1;
  }
  for (char c : seen)
    if (!c) throw DomainError("alphabet is not the full product of its components");
  return s;
}

namespace {

// Queue ids enumerate all words over sigma_i of length <= k: the id is
// offset[len] + value, where value reads the queue oldest-letter-first as a
// base-|sigma_i| number.
struct QueueCodec {
  uint64_t base;
  std::vector<uint64_t> offset;  // offset[len], len in [0, k+1]
  std::vector<uint64_t> pow;     // base^i

  QueueCodec(uint64_t base, int k) : base(base), offset(k + 2, 0), pow(k + 1, 1) {
    for (int i = 1; i <= k; ++i) pow[i] = pow[i - 1] * base;
    for (int len = 0; len <= k; ++len) offset[len + 1] = offset[len] + pow[len];
  }

  size_t len_of(uint64_t id) const {
    size_t len = 0;
    while (id >= offset[len + 1]) ++len;
    return len;
  }

  uint64_t push_back(uint64_t id, size_t len, uint64_t letter) const {
    return offset[len + 1] + (id - offset[len]) * base + letter;
  }

  std::pair<uint64_t, uint64_t> pop_front(uint64_t id, size_t len) const {
    uint64_t value = id - offset[len];
    uint64_t front = value / pow[len - 1];
    return {front, offset[len - 1] + value % pow[len - 1]};
  }

  uint64_t total() const { return offset.back(); }
};

}  // namespace

size_t ArenaGame::queue_len(uint32_t node) const {
  QueueCodec codec(sigma_i.size(), k);
  return codec.len_of(node_queue[node]);
}

std::vector<uint32_t> ArenaGame::queue_letters(uint32_t node) const {
  QueueCodec codec(sigma_i.size(), k);
  uint64_t id = node_queue[node];
  size_t len = codec.len_of(id);
  std::vector<uint32_t> out;
  while (len > 0) {
    auto [front, rest] = codec.pop_front(id, len);
    out.push_back(static_cast<uint32_t>(front));
    id = rest;
    --len;
  }
  return out;
}

ArenaGame build_arena(const Automaton& a, const DelaySpec& spec, size_t node_budget) {
  if (spec.k < 1) throw DomainError("constant lookahead requires k >= 1");
  if (!a.deterministic())
    throw DomainError("delay-game arenas need a deterministic complete automaton");
  const auto* parity = std::get_if<ParityAcc>(&a.acceptance());
  if (!parity) throw DomainError("build_arena expects parity acceptance (translate first)");
  for (uint32_t c : parity->color)
    if (c < 1 || c > 2) throw DomainError("build_arena expects parity colors in {1, 2}");

  AlphabetSplit split = split_product_alphabet(a);
  size_t ni = split.sigma_i.size(), no = split.sigma_o.size();
  QueueCodec codec(ni, spec.k);

  ArenaGame arena;
  arena.k = spec.k;
  arena.sigma_i = split.sigma_i;
  arena.sigma_o = split.sigma_o;

  // Node key packs (state, queue id); queue ids fit well under 2^40 for any
  // solvable instance, states under 2^24 are checked by the budget anyway.
  std::unordered_map<uint64_t, uint32_t> id;
  auto key = [&](state_t q, uint64_t queue) { return queue * a.num_states() + q; };
  std::vector<std::pair<state_t, uint64_t>> nodes;
  auto intern = [&](state_t q, uint64_t queue) -> uint32_t {
    auto [it, fresh] = id.emplace(key(q, queue), static_cast<uint32_t>(nodes.size()));
    if (fresh) {
      if (nodes.size() >= node_budget)
        throw ResourceError("arena node budget exceeded (" + std::to_string(node_budget) +
                                " nodes); raise --budget or DELAYGAME_BUDGET",
                            node_budget, nodes.size() + 1);
      nodes.emplace_back(q, queue);
    }
    return it->second;
  };

  intern(a.initial(), 0);
  std::vector<uint32_t> edge_off{0};
  std::vector<uint32_t> edge_to;
  for (uint32_t v = 0; v < nodes.size(); ++v) {
    auto [q, queue] = nodes[v];
    size_t len = codec.len_of(queue);
    if (len < static_cast<size_t>(spec.k)) {
      // Player I appends one input letter.
      for (uint64_t i = 0; i < ni; ++i)
        edge_to.push_back(intern(q, codec.push_back(queue, len, i)));
    } else {
      // Player O consumes the oldest pending letter with her output choice.
      auto [front, rest] = codec.pop_front(queue, len);
      for (uint64_t o = 0; o < no; ++o) {
        letter_t l = split.pair_index[front * no + o];
        edge_to.push_back(intern(a.step(q, l), rest));
      }
    }
    edge_off.push_back(static_cast<uint32_t>(edge_to.size()));
  }

  size_t count = nodes.size();
  arena.node_state.reserve(count);
  arena.node_queue.reserve(count);
  arena.graph.owner.reserve(count);
  arena.graph.buchi.reserve(count);
  for (auto& [q, queue] : nodes) {
    size_t len = codec.len_of(queue);
    bool o_turn = len == static_cast<size_t>(spec.k);
    // Queue-length invariant: exactly k at O nodes, shorter at I nodes.
    assert(o_turn || len < static_cast<size_t>(spec.k));
    arena.node_state.push_back(q);
    arena.node_queue.push_back(queue);
    arena.graph.owner.push_back(o_turn ? 0 : 1);
    arena.graph.buchi.push_back(parity->color[q] == 2 ? 1 : 0);
  }
  arena.graph.edge_off = std::move(edge_off);
  arena.graph.edge_to = std::move(edge_to);
  arena.graph.initial = 0;
  return arena;
}

}  // namespace wmdelay
