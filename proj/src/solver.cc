#include "wmdelay/solver.hh"

#include <algorithm>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

constexpr uint32_t kNoEdge = UINT32_MAX;

// Attractor of `target` for player `p` inside `alive`. Fills rank (BFS layer,
// UINT32_MAX outside) and, for attracted p-nodes, a canonical strategy edge:
// the lowest-index edge leading to a strictly smaller rank.
struct Attractor {
  std::vector<uint32_t> rank;
  std::vector<char> in;

  Attractor(const GameGraph& g, const std::vector<std::vector<uint32_t>>& pred,
            const std::vector<char>& alive, const std::vector<char>& target, uint8_t p) {
    size_t n = g.size();
    rank.assign(n, UINT32_MAX);
    in.assign(n, 0);
    // Opponent nodes join once every alive successor is attracted.
    std::vector<uint32_t> pending(n, 0);
    for (uint32_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      uint32_t cnt = 0;
      for (uint32_t w : g.succ(v))
        if (alive[w]) ++cnt;
      pending[v] = cnt;
    }
    std::vector<uint32_t> frontier, next;
    for (uint32_t v = 0; v < n; ++v)
      if (alive[v] && target[v]) {
        in[v] = 1;
        rank[v] = 0;
        frontier.push_back(v);
      }
    uint32_t layer = 0;
    while (!frontier.empty()) {
      ++layer;
      next.clear();
      for (uint32_t w : frontier) {
        for (uint32_t v : pred[w]) {
          if (!alive[v] || in[v]) continue;
          if (g.owner[v] == p) {
            in[v] = 1;
            rank[v] = layer;
            next.push_back(v);
          } else if (--pending[v] == 0) {
            in[v] = 1;
            rank[v] = layer;
            next.push_back(v);
          }
        }
      }
      frontier.swap(next);
    }
  }

  // Lowest-index edge decreasing the rank (only meaningful for p-nodes with
  // rank > 0).
  uint32_t strategy_edge(const GameGraph& g, const std::vector<char>& alive, uint32_t v) const {
    auto succ = g.succ(v);
    for (uint32_t e = 0; e < succ.size(); ++e) {
      uint32_t w = succ[e];
      if (alive[w] && in[w] && rank[w] < rank[v]) return e;
    }
    return kNoEdge;
  }
};

std::vector<std::vector<uint32_t>> predecessors(const GameGraph& g) {
  std::vector<std::vector<uint32_t>> pred(g.size());
  for (uint32_t v = 0; v < g.size(); ++v)
    for (uint32_t w : g.succ(v)) pred[w].push_back(v);
  return pred;
}

uint32_t lowest_edge_into(const GameGraph& g, uint32_t v, const std::vector<char>& keep) {
  auto succ = g.succ(v);
  for (uint32_t e = 0; e < succ.size(); ++e)
    if (keep[succ[e]]) return e;
  return kNoEdge;
}

}  // namespace

BuchiSolution solve_buchi(const GameGraph& g) {
  size_t n = g.size();
  for (uint32_t v = 0; v < n; ++v)
    if (g.succ(v).empty()) throw ValidationError("game graph has a dead-end node");

  auto pred = predecessors(g);
  BuchiSolution sol;
  sol.winner.assign(n, 0);
  sol.strategy.assign(n, kNoEdge);

  std::vector<char> alive(n, 1);
  std::vector<char> target(n, 0);

  for (;;) {
    for (uint32_t v = 0; v < n; ++v) target[v] = alive[v] && g.buchi[v];
    Attractor reach(g, pred, alive, target, /*p=*/0);

    // Nodes of the current subgame from which O cannot even reach B once.
    std::vector<char> escape(n, 0);
    bool any_escape = false;
    for (uint32_t v = 0; v < n; ++v)
      if (alive[v] && !reach.in[v]) {
        escape[v] = 1;
        any_escape = true;
      }

    if (!any_escape) {
      // O wins everywhere that is still alive: attract to B, and from B-nodes
      // re-enter the (fully attracted) subgame.
      for (uint32_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        sol.winner[v] = 0;
        if (g.owner[v] != 0) continue;
        if (target[v])
          sol.strategy[v] = lowest_edge_into(g, v, alive);
        else
          sol.strategy[v] = reach.strategy_edge(g, alive, v);
      }
      return sol;
    }

    // I traps those nodes; remove his attractor of them from the game.
    Attractor trap(g, pred, alive, escape, /*p=*/1);
    for (uint32_t v = 0; v < n; ++v) {
      if (!alive[v] || !trap.in[v]) continue;
      sol.winner[v] = 1;
      if (g.owner[v] == 1) {
        if (escape[v]) {
          // Inside the escape set I stays there (suffices: B is unreachable).
          uint32_t e = lowest_edge_into(g, v, escape);
          sol.strategy[v] = e != kNoEdge ? e : lowest_edge_into(g, v, alive);
        } else {
          sol.strategy[v] = trap.strategy_edge(g, alive, v);
        }
      }
      alive[v] = 0;
    }
  }
}

// ---------------------------------------------------------------------------
// Zielonka's algorithm (max parity, even colors favor player O). Used only as
// the independent cross-validation oracle, so clarity over speed.

namespace {

struct Zielonka {
  const GameGraph& g;
  const std::vector<uint32_t>& color;
  std::vector<std::vector<uint32_t>> pred;

  Zielonka(const GameGraph& g, const std::vector<uint32_t>& color)
      : g(g), color(color), pred(predecessors(g)) {}

  std::vector<char> attractor(const std::vector<char>& alive, std::vector<char> set,
                              uint8_t p) const {
    Attractor a(g, pred, alive, set, p);
    std::vector<char> out(g.size(), 0);
    for (uint32_t v = 0; v < g.size(); ++v) out[v] = a.in[v];
    return out;
  }

  // Returns the winner per node of the subgame `alive`.
  std::vector<uint8_t> solve(std::vector<char> alive) const {
    std::vector<uint8_t> winner(g.size(), 0);
    bool empty = true;
    uint32_t max_color = 0;
    for (uint32_t v = 0; v < g.size(); ++v)
      if (alive[v]) {
        empty = false;
        max_color = std::max(max_color, color[v]);
      }
    if (empty) return winner;

    uint8_t favored = max_color % 2 == 0 ? 0 : 1;  // who likes the max color
    std::vector<char> top(g.size(), 0);
    for (uint32_t v = 0; v < g.size(); ++v) top[v] = alive[v] && color[v] == max_color;

    std::vector<char> attr = attractor(alive, top, favored);
    std::vector<char> rest = alive;
    for (uint32_t v = 0; v < g.size(); ++v)
      if (attr[v]) rest[v] = 0;

    std::vector<uint8_t> sub = solve(rest);
    std::vector<char> opp_region(g.size(), 0);
    bool opp_nonempty = false;
    for (uint32_t v = 0; v < g.size(); ++v)
      if (rest[v] && sub[v] != favored) {
        opp_region[v] = 1;
        opp_nonempty = true;
      }
    if (!opp_nonempty) {
      for (uint32_t v = 0; v < g.size(); ++v)
        if (alive[v]) winner[v] = favored;
      return winner;
    }

    std::vector<char> opp_attr = attractor(alive, opp_region, favored ^ 1);
    std::vector<char> remaining = alive;
    for (uint32_t v = 0; v < g.size(); ++v)
      if (opp_attr[v]) remaining[v] = 0;
    std::vector<uint8_t> rec = solve(remaining);
    for (uint32_t v = 0; v < g.size(); ++v) {
      if (!alive[v]) continue;
      winner[v] = opp_attr[v] ? (favored ^ 1) : rec[v];
    }
    return winner;
  }
};

}  // namespace

std::vector<uint8_t> solve_parity_zielonka(const GameGraph& g,
                                           const std::vector<uint32_t>& color) {
  for (uint32_t v = 0; v < g.size(); ++v)
    if (g.succ(v).empty()) throw ValidationError("game graph has a dead-end node");
  Zielonka z(g, color);
  std::vector<char> alive(g.size(), 1);
  return z.solve(std::move(alive));
}

}  // namespace wmdelay
