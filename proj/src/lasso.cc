#include "wmdelay/lasso.hh"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

// --- Deterministic automata --------------------------------------------------
//
// Weak Muller: iterate v from the state after u until the (state at the cycle
// boundary, occurrence set) pair repeats. The pair space has at most
// |Q| * 2^|Q| elements, so this halts; repetition with monotone occurrence
// sets means the set has stabilized.

struct BoundaryKey {
  state_t q;
  StateSet occ;
  bool operator==(const BoundaryKey&) const = default;
};

struct BoundaryKeyHash {
  size_t operator()(const BoundaryKey& k) const {
    return k.occ.hash() * 1000003u + k.q;
  }
};

std::pair<bool, StateSet> det_weak_muller(const Automaton& a,
                                          const std::vector<letter_t>& u,
                                          const std::vector<letter_t>& v) {
  StateSet occ(static_cast<uint32_t>(a.num_states()));
  state_t q = a.initial();
  occ.insert(q);
  for (letter_t l : u) {
    q = a.step(q, l);
    occ.insert(q);
  }
  std::unordered_set<BoundaryKey, BoundaryKeyHash> seen;
  while (seen.insert({q, occ}).second) {
    for (letter_t l : v) {
      q = a.step(q, l);
      occ.insert(q);
    }
  }
  return {a.weak_muller_sat(occ), occ};
}

// Parity / safety / reachability: the boundary state repeats within |Q|+1
// v-traversals; the repeating segment is the set of states visited infinitely
// often.
std::pair<bool, StateSet> det_colored(const Automaton& a, const std::vector<letter_t>& u,
                                      const std::vector<letter_t>& v) {
  uint32_t n = static_cast<uint32_t>(a.num_states());
  StateSet occ(n);
  state_t q = a.initial();
  occ.insert(q);

  if (const auto* s = std::get_if<SafetyAcc>(&a.acceptance())) {
    if (!s->safe.test(q)) return {false, occ};
    std::vector<int64_t> at(n, -1);
    int64_t step = 0;
    for (letter_t l : u) {
      q = a.step(q, l);
      occ.insert(q);
      if (!s->safe.test(q)) return {false, occ};
    }
    while (at[q] < 0) {
      at[q] = step++;
      for (letter_t l : v) {
        q = a.step(q, l);
        occ.insert(q);
        if (!s->safe.test(q)) return {false, occ};
      }
    }
    return {true, occ};
  }

  if (const auto* r = std::get_if<ReachabilityAcc>(&a.acceptance())) {
    if (r->target.test(q)) return {true, occ};
    std::vector<char> boundary_seen(n, 0);
    for (letter_t l : u) {
      q = a.step(q, l);
      occ.insert(q);
      if (r->target.test(q)) return {true, occ};
    }
    while (!boundary_seen[q]) {
      boundary_seen[q] = 1;
      for (letter_t l : v) {
        q = a.step(q, l);
        occ.insert(q);
        if (r->target.test(q)) return {true, occ};
      }
    }
    return {false, occ};
  }

  const auto& colors = std::get<ParityAcc>(a.acceptance()).color;
  for (letter_t l : u) {
    q = a.step(q, l);
    occ.insert(q);
  }
  // Find the boundary-state cycle, then the max color visited inside it.
  std::vector<int64_t> at(n, -1);
  std::vector<state_t> order;
  while (at[q] < 0) {
    at[q] = static_cast<int64_t>(order.size());
    order.push_back(q);
    for (letter_t l : v) {
      q = a.step(q, l);
      occ.insert(q);
    }
  }
  uint32_t max_color = 0;
  state_t p = q;  // q repeats: traverse the loop once more, recording colors
  do {
    max_color = std::max(max_color, colors[p]);
    for (letter_t l : v) {
      p = a.step(p, l);
      max_color = std::max(max_color, colors[p]);
    }
  } while (p != q);
  return {max_color % 2 == 0, occ};
}

// --- Non-deterministic automata ----------------------------------------------
//
// Product graph over (position in the lasso, state [, occurrence set]). The
// position of the last cycle letter wraps back to the first cycle position.

struct LassoGraph {
  size_t ulen, vlen;
  size_t positions() const { return ulen + vlen; }
  size_t next(size_t pos) const { return pos + 1 < ulen + vlen ? pos + 1 : ulen; }
};

// Tarjan SCC over an explicit graph given by adjacency lists.
struct Scc {
  const std::vector<std::vector<uint32_t>>& adj;
  std::vector<int32_t> comp, low, idx;
  std::vector<uint32_t> stack;
  std::vector<char> on_stack;
  int32_t counter = 0, comps = 0;
  std::vector<uint32_t> comp_size;
  std::vector<char> comp_has_self_loop;

  explicit Scc(const std::vector<std::vector<uint32_t>>& adj)
      : adj(adj),
        comp(adj.size(), -1),
        low(adj.size(), 0),
        idx(adj.size(), -1),
        on_stack(adj.size(), 0) {
    for (uint32_t v = 0; v < adj.size(); ++v)
      if (idx[v] < 0) run(v);
    comp_size.assign(comps, 0);
    comp_has_self_loop.assign(comps, 0);
    for (uint32_t v = 0; v < adj.size(); ++v) {
      ++comp_size[comp[v]];
      for (uint32_t w : adj[v])
        if (w == v) comp_has_self_loop[comp[v]] = 1;
    }
  }

  // Iterative Tarjan; product graphs can be deep.
  void run(uint32_t root) {
    struct Frame {
      uint32_t v;
      size_t ei;
    };
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, ei] = frames.back();
      if (ei < adj[v].size()) {
        uint32_t w = adj[v][ei++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      } else {
        if (low[v] == idx[v]) {
          for (;;) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        uint32_t done = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[done]);
      }
    }
  }

  bool on_cycle(uint32_t v) const {
    return comp_size[comp[v]] > 1 || comp_has_self_loop[comp[v]];
  }
};

// Nondeterministic weak Muller: nodes (pos, state, occ). The occurrence set is
// monotone along edges, so every cycle keeps it constant; acceptance holds iff
// a reachable node on a cycle carries a satisfying occurrence set.
bool nondet_weak_muller(const Automaton& a, const std::vector<letter_t>& u,
                        const std::vector<letter_t>& v) {
  LassoGraph g{u.size(), v.size()};
  uint32_t n = static_cast<uint32_t>(a.num_states());
  struct Node {
    uint32_t pos;
    state_t q;
    StateSet occ;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    size_t operator()(const Node& x) const {
      return x.occ.hash() * 1000003u + x.pos * 131u + x.q;
    }
  };
  std::unordered_map<Node, uint32_t, NodeHash> id;
  std::vector<Node> nodes;
  std::vector<std::vector<uint32_t>> adj;
  auto intern = [&](Node x) {
    auto [it, fresh] = id.emplace(std::move(x), static_cast<uint32_t>(nodes.size()));
    if (fresh) {
      nodes.push_back(it->first);
      adj.emplace_back();
    }
    return it->second;
  };
  StateSet occ0(n);
  occ0.insert(a.initial());
  uint32_t start = intern({0, a.initial(), occ0});
  for (uint32_t v0 = 0; v0 < nodes.size(); ++v0) {
    Node cur = nodes[v0];
    letter_t l = cur.pos < g.ulen ? u[cur.pos] : v[cur.pos - g.ulen];
    for (const Transition& t : a.successors(cur.q, l)) {
      StateSet occ = cur.occ;
      occ.insert(t.dst);
      uint32_t w = intern({static_cast<uint32_t>(g.next(cur.pos)), t.dst, std::move(occ)});
      adj[v0].push_back(w);
    }
  }
  (void)start;  // node 0 is the root; everything interned is reachable from it
  Scc scc(adj);
  for (uint32_t v0 = 0; v0 < nodes.size(); ++v0)
    if (scc.on_cycle(v0) && a.weak_muller_sat(nodes[v0].occ)) return true;
  return false;
}

// Positions x states graph for the remaining nondeterministic conditions.
struct PosStateGraph {
  LassoGraph g;
  uint32_t n;
  std::vector<std::vector<uint32_t>> adj;
  std::vector<char> reachable;
  uint32_t node(uint32_t pos, state_t q) const { return pos * n + q; }

  PosStateGraph(const Automaton& a, const std::vector<letter_t>& u,
                const std::vector<letter_t>& v)
      : g{u.size(), v.size()}, n(static_cast<uint32_t>(a.num_states())) {
    adj.assign(g.positions() * n, {});
    for (uint32_t pos = 0; pos < g.positions(); ++pos) {
      letter_t l = pos < g.ulen ? u[pos] : v[pos - g.ulen];
      for (state_t q = 0; q < n; ++q)
        for (const Transition& t : a.successors(q, l))
          adj[node(pos, q)].push_back(node(static_cast<uint32_t>(g.next(pos)), t.dst));
    }
    reachable.assign(adj.size(), 0);
    std::vector<uint32_t> work{node(0, a.initial())};
    reachable[work[0]] = 1;
    while (!work.empty()) {
      uint32_t x = work.back();
      work.pop_back();
      for (uint32_t y : adj[x])
        if (!reachable[y]) {
          reachable[y] = 1;
          work.push_back(y);
        }
    }
  }
};

bool nondet_parity(const Automaton& a, const std::vector<letter_t>& u,
                   const std::vector<letter_t>& v) {
  const auto& colors = std::get<ParityAcc>(a.acceptance()).color;
  PosStateGraph psg(a, u, v);
  std::vector<uint32_t> palette(colors);
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  // A reachable cycle whose maximal color c is even exists iff, in the
  // subgraph of states colored <= c, some nontrivial SCC contains color c.
  for (uint32_t c : palette) {
    if (c % 2) continue;
    std::vector<std::vector<uint32_t>> sub(psg.adj.size());
    auto keep = [&](uint32_t x) { return colors[x % psg.n] <= c; };
    for (uint32_t x = 0; x < psg.adj.size(); ++x) {
      if (!keep(x)) continue;
      for (uint32_t y : psg.adj[x])
        if (keep(y)) sub[x].push_back(y);
    }
    Scc scc(sub);
    for (uint32_t x = 0; x < sub.size(); ++x)
      if (psg.reachable[x] && keep(x) && colors[x % psg.n] == c && scc.on_cycle(x))
        return true;
  }
  return false;
}

bool nondet_safety(const Automaton& a, const std::vector<letter_t>& u,
                   const std::vector<letter_t>& v) {
  const auto& safe = std::get<SafetyAcc>(a.acceptance()).safe;
  if (!safe.test(a.initial())) return false;
  PosStateGraph psg(a, u, v);
  // Restrict to F, recompute reachability from the root, and look for a cycle.
  std::vector<std::vector<uint32_t>> sub(psg.adj.size());
  auto keep = [&](uint32_t x) { return safe.test(x % psg.n); };
  for (uint32_t x = 0; x < psg.adj.size(); ++x) {
    if (!keep(x)) continue;
    for (uint32_t y : psg.adj[x])
      if (keep(y)) sub[x].push_back(y);
  }
  uint32_t root = psg.node(0, a.initial());
  std::vector<char> reach(sub.size(), 0);
  std::vector<uint32_t> work{root};
  reach[root] = 1;
  while (!work.empty()) {
    uint32_t x = work.back();
    work.pop_back();
    for (uint32_t y : sub[x])
      if (!reach[y]) {
        reach[y] = 1;
        work.push_back(y);
      }
  }
  Scc scc(sub);
  for (uint32_t x = 0; x < sub.size(); ++x)
    if (reach[x] && keep(x) && scc.on_cycle(x)) return true;
  return false;
}

bool nondet_reachability(const Automaton& a, const std::vector<letter_t>& u,
                         const std::vector<letter_t>& v) {
  const auto& target = std::get<ReachabilityAcc>(a.acceptance()).target;
  PosStateGraph psg(a, u, v);
  // Need an F-visit on some infinite run: an F-node reachable from the root
  // from which a cycle is reachable.
  Scc scc(psg.adj);
  std::vector<char> leads_to_cycle(psg.adj.size(), 0);
  // Reverse reachability from on-cycle nodes.
  std::vector<std::vector<uint32_t>> radj(psg.adj.size());
  for (uint32_t x = 0; x < psg.adj.size(); ++x)
    for (uint32_t y : psg.adj[x]) radj[y].push_back(x);
  std::vector<uint32_t> work;
  for (uint32_t x = 0; x < psg.adj.size(); ++x)
    if (scc.on_cycle(x)) {
      leads_to_cycle[x] = 1;
      work.push_back(x);
    }
  while (!work.empty()) {
    uint32_t x = work.back();
    work.pop_back();
    for (uint32_t y : radj[x])
      if (!leads_to_cycle[y]) {
        leads_to_cycle[y] = 1;
        work.push_back(y);
      }
  }
  if (target.test(a.initial())) {
    uint32_t root = psg.node(0, a.initial());
    if (leads_to_cycle[root]) return true;
  }
  for (uint32_t x = 0; x < psg.adj.size(); ++x)
    if (psg.reachable[x] && target.test(x % psg.n) && leads_to_cycle[x]) return true;
  return false;
}

}  // namespace

std::pair<bool, StateSet> lasso_run_det(const Automaton& a, const Lasso& lasso) {
  if (!a.deterministic())
    throw DomainError("lasso_run_det requires a deterministic complete automaton");
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  std::vector<letter_t> u = resolve_word(a, lasso.spoke);
  std::vector<letter_t> v = resolve_word(a, lasso.cycle);
  if (is_weak_muller(a.acceptance())) return det_weak_muller(a, u, v);
  return det_colored(a, u, v);
}

bool lasso_accepts(const Automaton& a, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  if (a.deterministic()) return lasso_run_det(a, lasso).first;
  std::vector<letter_t> u = resolve_word(a, lasso.spoke);
  std::vector<letter_t> v = resolve_word(a, lasso.cycle);
  if (is_weak_muller(a.acceptance())) return nondet_weak_muller(a, u, v);
  if (std::holds_alternative<ParityAcc>(a.acceptance())) return nondet_parity(a, u, v);
  if (std::holds_alternative<SafetyAcc>(a.acceptance())) return nondet_safety(a, u, v);
  return nondet_reachability(a, u, v);
}

}  // namespace wmdelay
