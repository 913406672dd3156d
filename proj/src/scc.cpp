#include "nhier/scc.hpp"

#include <algorithm>
#include <utility>

namespace nhier {

SccResult tarjan_scc(const Graph& g, const std::vector<bool>* active) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = SccResult::npos;
  SccResult res;
  res.component.assign(n, SccResult::npos);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t counter = 0;

  auto is_active = [&](std::size_t v) { return active == nullptr || (*active)[v]; };

  for (std::size_t root = 0; root < n; ++root) {
    if (!is_active(root) || index[root] != unvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < g[v].size()) {
        std::size_t w = g[v][ei++];
        if (!is_active(w)) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          res.component[w] = res.count;
        } while (w != v);
        ++res.count;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return res;
}

std::vector<bool> reachable_from(const Graph& g, const std::vector<std::size_t>& roots,
                                 const std::vector<bool>* active) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> todo;
  for (auto r : roots) {
    if (active && !(*active)[r]) continue;
    if (!seen[r]) {
      seen[r] = true;
      todo.push_back(r);
    }
  }
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    for (auto w : g[v]) {
      if (seen[w] || (active && !(*active)[w])) continue;
      seen[w] = true;
      todo.push_back(w);
    }
  }
  return seen;
}

Graph state_graph(const Automaton& a) {
  Graph g(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State s : a.successors(q, l)) g[q].push_back(s);
    std::sort(g[q].begin(), g[q].end());
    g[q].erase(std::unique(g[q].begin(), g[q].end()), g[q].end());
  }
  return g;
}

SccGraph scc_decomposition(const Automaton& a) {
  Graph g = state_graph(a);
  auto reach = reachable_from(g, {a.initial()});
  auto scc = tarjan_scc(g, &reach);

  // Renumber components so that the one holding the smallest state id comes first.
  std::vector<std::size_t> order(scc.count, SccResult::npos);
  std::size_t next = 0;
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = scc.component[q];
    if (c != SccResult::npos && order[c] == SccResult::npos) order[c] = next++;
  }

  SccGraph out;
  out.components.resize(next);
  out.edges.resize(next);
  out.component_of.assign(a.num_states(), SccResult::npos);
  for (State q = 0; q < a.num_states(); ++q) {
    auto c = scc.component[q];
    if (c == SccResult::npos) continue;
    out.component_of[q] = order[c];
    out.components[order[c]].push_back(q);
  }
  out.trivial.assign(next, false);
  for (std::size_t c = 0; c < next; ++c) {
    const auto& comp = out.components[c];
    if (comp.size() == 1) {
      State q = comp[0];
      out.trivial[c] = !std::binary_search(g[q].begin(), g[q].end(), q);
    }
    for (State q : comp)
      for (auto s : g[q]) {
        auto d = out.component_of[s];
        if (d != c) out.edges[c].push_back(d);
      }
    std::sort(out.edges[c].begin(), out.edges[c].end());
    out.edges[c].erase(std::unique(out.edges[c].begin(), out.edges[c].end()), out.edges[c].end());
  }
  out.ergodic.resize(next);
  out.alpha_free.resize(next);
  for (std::size_t c = 0; c < next; ++c) {
    out.ergodic[c] = out.edges[c].empty();
    out.alpha_free[c] = std::none_of(out.components[c].begin(), out.components[c].end(),
                                     [&](State q) { return a.accepting(q); });
  }
  return out;
}

bool is_weak(const Automaton& a) {
  Graph g = state_graph(a);
  auto scc = tarjan_scc(g);
  std::vector<int> seen(scc.count, -1);
  for (State q = 0; q < a.num_states(); ++q) {
    int acc = a.accepting(q) ? 1 : 0;
    auto c = scc.component[q];
    if (seen[c] == -1)
      seen[c] = acc;
    else if (seen[c] != acc)
      return false;
  }
  return true;
}

}  // namespace nhier
