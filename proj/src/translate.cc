#include "wmdelay/translate.hh"

#include <algorithm>
#include <unordered_map>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

struct PairKey {
  state_t base;
  StateSet occ;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  size_t operator()(const PairKey& k) const { return k.occ.hash() * 1000003u + k.base; }
};

std::string tracked_name(const Automaton& a, state_t base, const StateSet& occ) {
  std::string name = "(" + a.state_name(base) + ",{";
  bool first = true;
  for (uint32_t q : occ.elements()) {
    if (!first) name += ",";
    first = false;
    name += a.state_name(q);
  }
  name += "})";
  return name;
}

}  // namespace

Translated weak_muller_to_parity(const Automaton& a) {
  if (!is_weak_muller(a.acceptance()))
    throw DomainError("weak_muller_to_parity requires a weak Muller acceptance condition");

  uint32_t n = static_cast<uint32_t>(a.num_states());
  std::unordered_map<PairKey, uint32_t, PairKeyHash> id;
  std::vector<TrackedState> tracked;
  auto intern = [&](state_t base, StateSet occ) {
    PairKey key{base, std::move(occ)};
    auto [it, fresh] = id.emplace(key, static_cast<uint32_t>(tracked.size()));
    if (fresh) tracked.push_back({key.base, key.occ});
    return it->second;
  };

  StateSet occ0(n);
  occ0.insert(a.initial());
  intern(a.initial(), std::move(occ0));

  // Breadth-first closure over reachable (state, occurrence set) pairs.
  std::vector<std::vector<std::pair<letter_t, uint32_t>>> edges;  // per tracked state
  for (uint32_t i = 0; i < tracked.size(); ++i) {
    TrackedState cur = tracked[i];
    edges.emplace_back();
    for (letter_t l = 0; l < a.alphabet().size(); ++l) {
      for (const Transition& t : a.successors(cur.base, l)) {
        StateSet occ = cur.occ;
        occ.insert(t.dst);
        uint32_t j = intern(t.dst, std::move(occ));
        edges[i].emplace_back(l, j);
      }
    }
  }

  Automaton::Builder b;
  for (uint32_t i = 0; i < tracked.size(); ++i)
    b.add_state(tracked_name(a, tracked[i].base, tracked[i].occ));
  b.alphabet(a.alphabet());
  b.initial(tracked_name(a, tracked[0].base, tracked[0].occ));
  for (uint32_t i = 0; i < tracked.size(); ++i)
    for (auto [l, j] : edges[i]) b.transition(i, l, j);

  ParityAcc parity;
  parity.color.reserve(tracked.size());
  for (const TrackedState& ts : tracked)
    parity.color.push_back(a.weak_muller_sat(ts.occ) ? 2 : 1);
  b.acceptance(std::move(parity));

  return Translated{b.build(), std::move(tracked)};
}

ColorProfile color_profile(const Translated& t) {
  const auto& colors = std::get<ParityAcc>(t.automaton.acceptance()).color;
  ColorProfile p{t.tracked.size(), 0, 0, 0};
  for (uint32_t c : colors) (c == 2 ? p.color2_states : p.color1_states)++;

  // Longest chain of strict occurrence-set growths along any path. Order
  // states by |occ|; within equal occurrence sets no edge grows, so a reverse
  // pass over states sorted by occurrence size is a valid DP order once
  // same-set groups are processed together.
  size_t n = t.tracked.size();
  const Automaton& a = t.automaton;
  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
    return t.tracked[x].occ.count() > t.tracked[y].occ.count();
  });
  std::vector<size_t> growth(n, 0);
  // Within one occurrence set the growth count is constant along same-set
  // edges only if the subgraph is strongly connected; a fixpoint sweep over
  // the same-size group handles the general case cheaply at these sizes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t i : order) {
      for (letter_t l = 0; l < a.alphabet().size(); ++l) {
        for (const Transition& e : a.successors(i, l)) {
          uint32_t j = e.dst;
          size_t cand = t.tracked[j].occ == t.tracked[i].occ ? growth[j] : growth[j] + 1;
          if (cand > growth[i]) {
            growth[i] = cand;
            changed = true;
          }
        }
      }
    }
  }
  // Every tracked state is reachable from the initial pair, so the longest
  // growth chain overall starts there.
  p.max_occ_growth = growth.empty() ? 0 : growth[t.automaton.initial()];
  return p;
}

}  // namespace wmdelay
