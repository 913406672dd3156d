#include "nhier/lasso.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "nhier/scc.hpp"

namespace nhier {

namespace {

struct LassoProduct {
  std::size_t positions;
  std::size_t stem;
  Graph graph;
  std::size_t node(State q, std::size_t pos) const { return q * positions + pos; }
};

LassoProduct build_product(const Automaton& a, const LassoWord& w) {
  LassoProduct p;
  p.stem = w.stem.size();
  p.positions = w.stem.size() + w.loop.size();
  p.graph.resize(a.num_states() * p.positions);
  for (State q = 0; q < a.num_states(); ++q)
    for (std::size_t pos = 0; pos < p.positions; ++pos) {
      std::size_t next = pos + 1 < p.positions ? pos + 1 : p.stem;
      for (State s : a.successors(q, w.at(pos))) p.graph[p.node(q, pos)].push_back(p.node(s, next));
    }
  return p;
}

// BFS path from `from` to `to` inside `allowed` (inclusive); returns the node sequence.
std::vector<std::size_t> bfs_path(const Graph& g, std::size_t from, std::size_t to, const std::vector<bool>& allowed,
                                  bool nonempty) {
  std::vector<std::size_t> parent(g.size(), SccResult::npos);
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> todo;
  // For a cycle, start from the successors of `from` so that the path has length >= 1.
  if (nonempty) {
    for (auto s : g[from])
      if (allowed[s] && !seen[s]) {
        seen[s] = true;
        parent[s] = from;
        todo.push_back(s);
      }
  } else {
    seen[from] = true;
    todo.push_back(from);
  }
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop_front();
    if (v == to) break;
    for (auto s : g[v])
      if (allowed[s] && !seen[s]) {
        seen[s] = true;
        parent[s] = v;
        todo.push_back(s);
      }
  }
  if (!seen[to]) throw std::logic_error("lasso witness path not found");
  std::vector<std::size_t> path{to};
  auto v = to;
  while (true) {
    if (!nonempty && v == from) break;
    v = parent[v];
    path.push_back(v);
    if (nonempty && v == from) break;
  }
  std::reverse(path.begin(), path.end());
  return path;  // from ... to
}

}  // namespace

MembershipResult lasso_membership(const Automaton& a, const LassoWord& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must not be empty");
  for (auto l : w.stem)
    if (l >= a.num_letters()) throw std::invalid_argument("alphabet mismatch: letter index out of range");
  for (auto l : w.loop)
    if (l >= a.num_letters()) throw std::invalid_argument("alphabet mismatch: letter index out of range");

  auto p = build_product(a, w);
  const std::size_t n = p.graph.size();
  auto state_of = [&](std::size_t v) { return static_cast<State>(v / p.positions); };
  auto pos_of = [&](std::size_t v) { return v % p.positions; };

  std::size_t start = p.node(a.initial(), 0);
  auto reach = reachable_from(p.graph, {start});
  std::vector<bool> active = reach;
  const bool cobuchi = a.kind() == Acceptance::cobuchi;
  if (cobuchi)
    for (std::size_t v = 0; v < n; ++v)
      if (a.accepting(state_of(v))) active[v] = false;

  auto scc = tarjan_scc(p.graph, &active);
  std::vector<std::size_t> size(scc.count, 0);
  std::vector<bool> self_loop(scc.count, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (scc.component[v] == SccResult::npos) continue;
    ++size[scc.component[v]];
    for (auto s : p.graph[v])
      if (s == v) self_loop[scc.component[v]] = true;
  }

  std::size_t target = SccResult::npos;
  for (std::size_t v = 0; v < n && target == SccResult::npos; ++v) {
    auto c = scc.component[v];
    if (c == SccResult::npos) continue;
    if (size[c] < 2 && !self_loop[c]) continue;
    if (cobuchi || a.accepting(state_of(v))) target = v;
  }
  if (target == SccResult::npos) return {};

  auto c = scc.component[target];
  std::vector<bool> in_comp(n, false);
  for (std::size_t v = 0; v < n; ++v) in_comp[v] = scc.component[v] == c;
  auto stem = bfs_path(p.graph, start, target, reach, false);
  auto cycle = bfs_path(p.graph, target, target, in_comp, true);

  RunWitness r;
  for (std::size_t i = 0; i + 1 < stem.size(); ++i) {
    r.stem_states.push_back(state_of(stem[i]));
    r.stem_word.push_back(w.at(pos_of(stem[i])));
  }
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    r.loop_states.push_back(state_of(cycle[i]));
    r.loop_word.push_back(w.at(pos_of(cycle[i])));
  }
  return {true, std::move(r)};
}

bool validate_witness(const Automaton& a, const LassoWord& w, const RunWitness& r) {
  if (r.loop_states.empty() || r.loop_states.size() != r.loop_word.size() ||
      r.stem_states.size() != r.stem_word.size())
    return false;
  // Same ω-word: compare a prefix long enough to cover both periodic parts.
  std::size_t horizon = std::max(w.stem.size(), r.stem_word.size()) + 2 * w.loop.size() * r.loop_word.size() + 1;
  LassoWord rw{r.stem_word, r.loop_word};
  for (std::size_t i = 0; i < horizon; ++i)
    if (rw.at(i) != w.at(i)) return false;

  std::vector<State> run = r.stem_states;
  run.insert(run.end(), r.loop_states.begin(), r.loop_states.end());
  if (run.front() != a.initial()) return false;
  for (std::size_t i = 0; i < run.size(); ++i) {
    State next = i + 1 < run.size() ? run[i + 1] : r.loop_states.front();
    const auto& succ = a.successors(run[i], rw.at(i));
    if (!std::binary_search(succ.begin(), succ.end(), next)) return false;
  }
  bool any_alpha = std::any_of(r.loop_states.begin(), r.loop_states.end(), [&](State q) { return a.accepting(q); });
  return a.kind() == Acceptance::cobuchi ? !any_alpha : any_alpha;
}

std::vector<LassoWord> enumerate_lassos(std::size_t num_letters, std::size_t max_stem, std::size_t max_loop) {
  auto words_of_length = [&](std::size_t len) {
    std::vector<std::vector<Letter>> out{{}};
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<std::vector<Letter>> next;
      for (const auto& w : out)
        for (Letter l = 0; l < num_letters; ++l) {
          auto x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
      out = std::move(next);
    }
    return out;
  };
  std::vector<std::vector<Letter>> stems, loops;
  for (std::size_t len = 0; len <= max_stem; ++len)
    for (auto& w : words_of_length(len)) stems.push_back(std::move(w));
  for (std::size_t len = 1; len <= max_loop; ++len)
    for (auto& w : words_of_length(len)) loops.push_back(std::move(w));
  std::vector<LassoWord> out;
  out.reserve(stems.size() * loops.size());
  for (const auto& u : stems)
    for (const auto& v : loops) out.push_back({u, v});
  return out;
}

}  // namespace nhier
