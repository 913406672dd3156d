#include "nhier/langops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "nhier/hierarchy.hpp"
#include "nhier/lasso.hpp"
#include "nhier/scc.hpp"
#include "nhier/sd_determinize.hpp"

namespace nhier {

namespace {

constexpr std::size_t npos = SccResult::npos;

// Letters along a shortest path from `from` to `to` inside `allowed`. With
// `nonempty`, the path has at least one edge (used to close cycles).
std::vector<Letter> letter_path(const LabeledGraph& g, std::size_t from, std::size_t to,
                                const std::vector<bool>& allowed, bool nonempty) {
  const std::size_t n = g.edges.size();
  std::vector<std::size_t> parent(n, npos);
  std::vector<Letter> via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> todo;
  auto push = [&](std::size_t v, std::size_t p, Letter l) {
    if (!allowed[v] || seen[v]) return;
    seen[v] = true;
    parent[v] = p;
    via[v] = l;
    todo.push_back(v);
  };
  if (nonempty) {
    for (const auto& e : g.edges[from]) push(e.to, from, e.letter);
  } else {
    seen[from] = true;
    todo.push_back(from);
  }
  while (!todo.empty() && !seen[to]) {
    auto v = todo.front();
    todo.pop_front();
    for (const auto& e : g.edges[v]) push(e.to, v, e.letter);
  }
  if (!seen[to]) throw std::logic_error("emptiness witness path not found");
  std::vector<Letter> out;
  if (!nonempty && from == to) return out;
  auto v = to;
  do {
    out.push_back(via[v]);
    v = parent[v];
  } while (v != from);
  std::reverse(out.begin(), out.end());
  return out;
}

Graph plain_graph(const LabeledGraph& g) {
  Graph out(g.edges.size());
  for (std::size_t v = 0; v < g.edges.size(); ++v)
    for (const auto& e : g.edges[v]) out[v].push_back(e.to);
  return out;
}

LabeledGraph automaton_graph(const Automaton& a) {
  LabeledGraph g;
  g.edges.resize(a.num_states());
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State s : a.successors(q, l)) g.edges[q].push_back({s, l});
  g.initial = a.initial();
  std::vector<bool> alpha(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) alpha[q] = a.accepting(q);
  if (a.kind() == Acceptance::cobuchi)
    g.fin_set = alpha;
  else
    g.inf_sets.push_back(alpha);
  return g;
}

void check_alphabets(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw std::invalid_argument("alphabet mismatch");
}

bool buchi_like(const Automaton& a) { return a.kind() != Acceptance::cobuchi; }

}  // namespace

std::optional<LassoWord> find_accepting_lasso(const LabeledGraph& g) {
  const std::size_t n = g.edges.size();
  if (n == 0) return std::nullopt;
  Graph plain = plain_graph(g);
  auto reach = reachable_from(plain, {g.initial});
  std::vector<bool> active = reach;
  if (!g.fin_set.empty())
    for (std::size_t v = 0; v < n; ++v)
      if (g.fin_set[v]) active[v] = false;

  auto scc = tarjan_scc(plain, &active);
  std::vector<std::vector<std::size_t>> members(scc.count);
  std::vector<bool> cyclic(scc.count, false);
  for (std::size_t v = 0; v < n; ++v) {
    auto c = scc.component[v];
    if (c == npos) continue;
    members[c].push_back(v);
    for (const auto& e : g.edges[v])
      if (e.to == v) cyclic[c] = true;
  }
  for (std::size_t c = 0; c < scc.count; ++c)
    if (members[c].size() > 1) cyclic[c] = true;

  // Smallest vertex first keeps witnesses canonical.
  std::vector<std::size_t> order(scc.count);
  for (std::size_t c = 0; c < scc.count; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) {
    if (members[x].empty() || members[y].empty()) return members[y].empty() && !members[x].empty();
    return members[x].front() < members[y].front();
  });

  for (auto c : order) {
    if (!cyclic[c]) continue;
    std::vector<std::size_t> hits;
    bool ok = true;
    for (const auto& inf : g.inf_sets) {
      auto it = std::find_if(members[c].begin(), members[c].end(), [&](auto v) { return inf[v]; });
      if (it == members[c].end()) {
        ok = false;
        break;
      }
      hits.push_back(*it);
    }
    if (!ok) continue;
    std::vector<bool> in_comp(n, false);
    for (auto v : members[c]) in_comp[v] = true;
    std::size_t anchor = hits.empty() ? members[c].front() : hits.front();

    LassoWord w;
    w.stem = letter_path(g, g.initial, anchor, reach, false);
    std::size_t at = anchor;
    for (std::size_t i = 1; i < hits.size(); ++i) {
      auto seg = letter_path(g, at, hits[i], in_comp, false);
      w.loop.insert(w.loop.end(), seg.begin(), seg.end());
      at = hits[i];
    }
    auto back = letter_path(g, at, anchor, in_comp, w.loop.empty());
    w.loop.insert(w.loop.end(), back.begin(), back.end());
    return w;
  }
  return std::nullopt;
}

std::optional<LassoWord> find_accepted_lasso(const Automaton& a) { return find_accepting_lasso(automaton_graph(a)); }

bool is_empty(const Automaton& a) { return !find_accepted_lasso(a).has_value(); }

LabeledGraph intersection_graph(const Automaton& a, const Automaton& b, const Limits& limits) {
  check_alphabets(a, b);
  LabeledGraph g;
  std::map<std::pair<State, State>, std::size_t> index;
  std::vector<std::pair<State, State>> nodes;
  auto id = [&](State p, State q) {
    auto [it, fresh] = index.emplace(std::make_pair(p, q), nodes.size());
    if (fresh) {
      if (nodes.size() >= limits.max_states) throw ResourceLimit("product exceeds max-states budget");
      nodes.emplace_back(p, q);
      g.edges.emplace_back();
    }
    return it->second;
  };
  g.initial = id(a.initial(), b.initial());
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    auto [p, q] = nodes[v];
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State p2 : a.successors(p, l))
        for (State q2 : b.successors(q, l)) {
          auto t = id(p2, q2);
          g.edges[v].push_back({t, l});
        }
  }
  const std::size_t n = nodes.size();
  std::vector<bool> fin(n, false);
  bool any_fin = false;
  for (int side = 0; side < 2; ++side) {
    const Automaton& x = side == 0 ? a : b;
    std::vector<bool> alpha(n);
    for (std::size_t v = 0; v < n; ++v) alpha[v] = x.accepting(side == 0 ? nodes[v].first : nodes[v].second);
    if (buchi_like(x)) {
      g.inf_sets.push_back(std::move(alpha));
    } else {
      any_fin = true;
      for (std::size_t v = 0; v < n; ++v) fin[v] = fin[v] || alpha[v];
    }
  }
  if (any_fin) g.fin_set = std::move(fin);
  return g;
}

Automaton cobuchi_reading(const Automaton& a) {
  if (a.kind() == Acceptance::cobuchi) return a;
  if (!is_weak(a)) throw Unsupported("no co-Büchi reading: Büchi automaton is not weak");
  Automaton out = a;
  out.set_kind(Acceptance::cobuchi);
  for (State q = 0; q < out.num_states(); ++q) out.set_accepting(q, !a.accepting(q));
  return out;
}

Automaton determinize_ncw(const Automaton& input, const Limits& limits) {
  if (input.kind() == Acceptance::buchi) throw std::invalid_argument("determinize_ncw expects a co-Büchi or weak automaton");
  Automaton a = cobuchi_reading(input);
  if (is_deterministic(a)) {
    Automaton out = reachable_trim(a);
    return out;
  }

  using Key = std::pair<StateSet, StateSet>;
  std::map<Key, State> index;
  std::vector<Key> keys;
  Automaton out(a.alphabet(), 0, Acceptance::cobuchi);
  out.set_name(a.name() + "_det");

  auto minus_alpha = [&](const StateSet& s) {
    StateSet r;
    for (State q : s)
      if (!a.accepting(q)) r.push_back(q);
    return r;
  };
  auto post = [&](const StateSet& s, Letter l) {
    StateSet r;
    for (State q : s) r.insert(r.end(), a.successors(q, l).begin(), a.successors(q, l).end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  };
  auto id = [&](Key k) {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (keys.size() >= limits.max_states) throw ResourceLimit("breakpoint construction exceeds max-states budget");
    State s = out.add_state(k.second.empty(), format_state_set(k.first) + "|" + format_state_set(k.second));
    index.emplace(k, s);
    keys.push_back(std::move(k));
    return s;
  };

  StateSet init{a.initial()};
  out.set_initial(id({init, minus_alpha(init)}));
  for (State v = 0; v < keys.size(); ++v) {
    for (Letter l = 0; l < a.num_letters(); ++l) {
      StateSet s2 = post(keys[v].first, l);
      StateSet o2 = keys[v].second.empty() ? minus_alpha(s2) : minus_alpha(post(keys[v].second, l));
      State t = id({std::move(s2), std::move(o2)});
      out.set_successors(v, l, {t});
    }
  }
  return out;
}

Automaton rank_complement(const Automaton& input, const Limits& limits) {
  Automaton a = reachable_trim(input);
  if (a.kind() == Acceptance::cobuchi) throw std::invalid_argument("rank_complement expects a Büchi automaton");
  const std::size_t n = a.num_states();
  const int max_rank = static_cast<int>(2 * n);
  constexpr int bottom = -1;

  // Key: ranks per state (bottom = absent), then one obligation flag per state.
  using Key = std::vector<int>;
  std::map<Key, State> index;
  std::vector<Key> keys;
  Automaton out(a.alphabet(), 0, Acceptance::buchi);
  out.set_name(a.name() + "_comp");
  auto id = [&](Key k) {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (keys.size() >= limits.max_states) throw ResourceLimit("rank-based complement exceeds max-states budget");
    bool obligations = false;
    for (std::size_t q = 0; q < n; ++q) obligations = obligations || k[n + q] != 0;
    State s = out.add_state(!obligations);
    index.emplace(k, s);
    keys.push_back(std::move(k));
    return s;
  };

  Key init(2 * n, 0);
  std::fill(init.begin(), init.begin() + static_cast<std::ptrdiff_t>(n), bottom);
  init[a.initial()] = max_rank;
  out.set_initial(id(init));

  for (State v = 0; v < keys.size(); ++v) {
    const Key cur = keys[v];
    bool had_obligations = false;
    for (std::size_t q = 0; q < n; ++q) had_obligations = had_obligations || cur[n + q] != 0;
    for (Letter l = 0; l < a.num_letters(); ++l) {
      std::vector<int> bound(n, bottom);
      std::vector<bool> from_obligation(n, false);
      for (State q = 0; q < n; ++q) {
        if (cur[q] == bottom) continue;
        for (State s : a.successors(q, l)) {
          bound[s] = bound[s] == bottom ? cur[q] : std::min(bound[s], cur[q]);
          if (cur[n + q]) from_obligation[s] = true;
        }
      }
      std::vector<State> present;
      for (State q = 0; q < n; ++q)
        if (bound[q] != bottom) present.push_back(q);

      StateSet targets;
      Key next(2 * n, 0);
      std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(n), bottom);
      // Enumerate every level ranking below the bounds, even on α.
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == present.size()) {
          Key k = next;
          for (State q : present) {
            bool even = k[q] % 2 == 0;
            k[n + q] = even && (!had_obligations || from_obligation[q]) ? 1 : 0;
          }
          targets.push_back(id(std::move(k)));
          return;
        }
        State q = present[i];
        for (int r = 0; r <= bound[q]; ++r) {
          if (a.accepting(q) && r % 2 != 0) continue;
          next[q] = r;
          self(self, i + 1);
        }
        next[q] = bottom;
      };
      rec(rec, 0);
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      out.set_successors(v, l, std::move(targets));
    }
  }
  return out;
}

Automaton universal_automaton(const Alphabet& alphabet) {
  Automaton u(alphabet, 1, Acceptance::buchi);
  u.set_name("U");
  u.set_accepting(0, true);
  for (Letter l = 0; l < alphabet.size(); ++l) u.add_transition(0, l, 0);
  return u;
}

Automaton empty_automaton(const Alphabet& alphabet) {
  Automaton z(alphabet, 1, Acceptance::buchi);
  z.set_name("Z");
  for (Letter l = 0; l < alphabet.size(); ++l) z.add_transition(0, l, 0);
  return z;
}

Automaton dualize_deterministic(const Automaton& d) {
  if (!is_deterministic(d)) throw std::invalid_argument("dualize_deterministic expects a deterministic automaton");
  Automaton out = d;
  out.set_name(d.name() + "_comp");
  switch (d.kind()) {
    case Acceptance::buchi: out.set_kind(Acceptance::cobuchi); break;
    case Acceptance::cobuchi: out.set_kind(Acceptance::buchi); break;
    case Acceptance::weak:
      for (State q = 0; q < out.num_states(); ++q) out.set_accepting(q, !d.accepting(q));
      break;
  }
  return out;
}

namespace {

// Complement via a deterministic automaton when a cheap route exists.
std::optional<Automaton> cheap_complement(const Automaton& a, const Limits& limits) {
  if (is_deterministic(a)) return dualize_deterministic(a);
  if (a.kind() != Acceptance::buchi || is_weak(a)) return dualize_deterministic(determinize_ncw(cobuchi_reading(a), limits));
  return std::nullopt;
}

// For a nondeterministic Büchi b: the α-restricted subset automaton D always
// satisfies L(D) ⊆ L(b), so it is an exact observer whenever L(b) ⊆ L(D).
Automaton subset_observer(const Automaton& b, const Limits& limits) {
  return determinize_sd_nbw(b, false, limits);
}

}  // namespace

Automaton complement(const Automaton& input, const Limits& limits) {
  Automaton a = reachable_trim(input);
  if (auto c = cheap_complement(a, limits)) return *c;
  Automaton d = subset_observer(a, limits);
  Automaton dual = dualize_deterministic(d);
  if (!find_accepting_lasso(intersection_graph(a, dual, limits))) return dual;
  return rank_complement(a, limits);
}

std::optional<LassoWord> find_counterexample(const Automaton& a_in, const Automaton& b_in, const Limits& limits) {
  check_alphabets(a_in, b_in);
  Automaton a = reachable_trim(a_in);
  Automaton b = reachable_trim(b_in);
  if (auto c = cheap_complement(b, limits)) return find_accepting_lasso(intersection_graph(a, *c, limits));
  Automaton d = subset_observer(b, limits);
  auto w = find_accepting_lasso(intersection_graph(a, dualize_deterministic(d), limits));
  if (!w) return std::nullopt;  // L(a) ⊆ L(D) ⊆ L(b)
  if (!accepts(b, *w)) return w;
  return find_accepting_lasso(intersection_graph(a, rank_complement(b, limits), limits));
}

std::optional<bool> contains_without_ranks(const Automaton& a_in, const Automaton& b_in, const Limits& limits) {
  check_alphabets(a_in, b_in);
  Automaton a = reachable_trim(a_in);
  Automaton b = reachable_trim(b_in);
  if (auto c = cheap_complement(b, limits)) return !find_accepting_lasso(intersection_graph(a, *c, limits));
  Automaton d = subset_observer(b, limits);
  auto w = find_accepting_lasso(intersection_graph(a, dualize_deterministic(d), limits));
  if (!w) return true;
  if (!accepts(b, *w)) return false;
  return std::nullopt;
}

bool contains(const Automaton& a, const Automaton& b, const Limits& limits) {
  return !find_counterexample(a, b, limits).has_value();
}

bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits) {
  return contains(a, b, limits) && contains(b, a, limits);
}

bool state_equiv(const Automaton& a, State q, State s, const Limits& limits) {
  if (q >= a.num_states() || s >= a.num_states()) throw std::out_of_range("state id out of range");
  if (q == s) return true;
  return equivalent(rebase(a, q), rebase(a, s), limits);
}

bool is_universal_state(const Automaton& a, State q, const Limits& limits) {
  if (q >= a.num_states()) throw std::out_of_range("state id out of range");
  return contains(universal_automaton(a.alphabet()), rebase(a, q), limits);
}

Automaton deterministic_observer(const Automaton& input, const Limits& limits) {
  Automaton a = reachable_trim(input);
  if (is_deterministic(a)) return a;
  if (a.kind() == Acceptance::cobuchi || is_weak(a)) return determinize_ncw(cobuchi_reading(a), limits);
  if (!check_sd(a, limits).sd) throw Unsupported("no deterministic observer: Büchi automaton is not semantically deterministic");
  return determinize_sd_nbw(a, false, limits);
}

}  // namespace nhier
