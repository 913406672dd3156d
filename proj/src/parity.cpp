#include "nhier/parity.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace nhier {

namespace {

constexpr std::size_t none = static_cast<std::size_t>(-1);

struct Solver {
  const ParityGame& g;
  std::vector<std::vector<std::size_t>> pred;
  std::vector<std::size_t> strategy;

  explicit Solver(const ParityGame& game) : g(game), pred(game.size()), strategy(game.size(), none) {
    for (std::size_t v = 0; v < g.size(); ++v)
      for (auto s : g.succ[v]) pred[s].push_back(v);
  }

  // Attractor of `target` for `player` inside `live`; records the attracting moves.
  std::vector<bool> attractor(const std::vector<bool>& live, const std::vector<bool>& target, int player) {
    std::vector<bool> in(g.size(), false);
    std::vector<std::size_t> escapes(g.size(), 0);
    std::deque<std::size_t> todo;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!live[v]) continue;
      for (auto s : g.succ[v])
        if (live[s]) ++escapes[v];
      if (target[v]) {
        in[v] = true;
        todo.push_back(v);
      }
    }
    while (!todo.empty()) {
      auto t = todo.front();
      todo.pop_front();
      for (auto v : pred[t]) {
        if (!live[v] || in[v]) continue;
        if (g.owner[v] == player) {
          in[v] = true;
          strategy[v] = t;
          todo.push_back(v);
        } else if (--escapes[v] == 0) {
          in[v] = true;
          todo.push_back(v);
        }
      }
    }
    return in;
  }

  // Returns the winning region of player 0 inside `live` (a trap for both).
  std::vector<bool> solve(const std::vector<bool>& live) {
    std::vector<bool> empty(g.size(), false);
    unsigned top = 0;
    bool any = false;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (live[v]) {
        top = any ? std::max(top, g.priority[v]) : g.priority[v];
        any = true;
      }
    if (!any) return empty;
    const int player = static_cast<int>(top % 2);
    std::vector<bool> top_set(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) top_set[v] = live[v] && g.priority[v] == top;
    auto a = attractor(live, top_set, player);
    // Vertices of the top priority owned by `player` just stay inside `live`.
    for (std::size_t v = 0; v < g.size(); ++v)
      if (top_set[v] && g.owner[v] == player)
        for (auto s : g.succ[v])
          if (live[s]) {
            strategy[v] = s;
            break;
          }

    std::vector<bool> rest(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) rest[v] = live[v] && !a[v];
    auto w0 = solve(rest);
    std::vector<bool> opp(g.size(), false);  // opponent's winning region in the subgame
    bool opp_nonempty = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      opp[v] = rest[v] && (player == 0 ? !w0[v] : w0[v]);
      opp_nonempty = opp_nonempty || opp[v];
    }
    if (!opp_nonempty) {
      std::vector<bool> win(g.size(), false);
      if (player == 0) win = live;
      return win;
    }
    auto b = attractor(live, opp, 1 - player);
    std::vector<bool> rest2(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) rest2[v] = live[v] && !b[v];
    auto w0b = solve(rest2);
    std::vector<bool> win(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!live[v]) continue;
      bool opp_wins = b[v] || (player == 0 ? !w0b[v] : w0b[v]);
      bool player_wins = !opp_wins;
      win[v] = player == 0 ? player_wins : !player_wins;
    }
    return win;
  }
};

}  // namespace

ParitySolution solve_parity(const ParityGame& g) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.succ[v].empty()) throw std::invalid_argument("parity game vertex without successor");
  Solver s(g);
  std::vector<bool> all(g.size(), true);
  ParitySolution out;
  out.eve_wins = s.solve(all);
  out.strategy = s.strategy;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (out.strategy[v] == none) out.strategy[v] = g.succ[v].front();
  return out;
}

}  // namespace nhier
