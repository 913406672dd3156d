#include "nhier/probability.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "nhier/langops.hpp"
#include "nhier/scc.hpp"
#include "nhier/sd_determinize.hpp"

namespace nhier {

std::vector<Rational> state_measures(const Automaton& d) {
  if (!is_deterministic(d)) throw std::invalid_argument("measure_deterministic expects a deterministic automaton");
  const std::size_t n = d.num_states();
  const Letter k = static_cast<Letter>(d.num_letters());
  Graph g = state_graph(d);
  auto scc = tarjan_scc(g);

  std::vector<bool> leaves(scc.count, false), has_alpha(scc.count, false), all_alpha(scc.count, true);
  std::vector<bool> exits(scc.count, false);
  for (State q = 0; q < n; ++q) {
    auto c = scc.component[q];
    if (d.accepting(q))
      has_alpha[c] = true;
    else
      all_alpha[c] = false;
    for (auto s : g[q])
      if (scc.component[s] != c) exits[c] = true;
  }
  std::vector<bool> good(scc.count, false), bad(scc.count, false);
  for (std::size_t c = 0; c < scc.count; ++c) {
    if (exits[c]) continue;
    bool acc = d.kind() == Acceptance::cobuchi ? !has_alpha[c] : has_alpha[c];
    (acc ? good : bad)[c] = true;
  }

  // States that cannot reach a good ergodic SCC have measure 0.
  Graph rev(n);
  for (State q = 0; q < n; ++q)
    for (auto s : g[q]) rev[s].push_back(q);
  std::vector<std::size_t> roots;
  for (State q = 0; q < n; ++q)
    if (good[scc.component[q]]) roots.push_back(q);
  auto can_win = reachable_from(rev, roots);

  std::vector<Rational> value(n, Rational(0));
  std::vector<std::size_t> var(n, SccResult::npos);
  std::vector<State> vars;
  for (State q = 0; q < n; ++q) {
    if (good[scc.component[q]])
      value[q] = 1;
    else if (can_win[q] && !bad[scc.component[q]]) {
      var[q] = vars.size();
      vars.push_back(q);
    }
  }
  if (vars.empty()) return value;

  const Rational step(1, k);
  std::vector<std::vector<Rational>> m(vars.size(), std::vector<Rational>(vars.size(), Rational(0)));
  std::vector<Rational> rhs(vars.size(), Rational(0));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    State q = vars[i];
    m[i][i] += 1;
    for (Letter l = 0; l < k; ++l) {
      State s = d.successors(q, l).front();
      if (var[s] != SccResult::npos)
        m[i][var[s]] -= step;
      else
        rhs[i] += step * value[s];
    }
  }
  auto x = solve_linear_system(m, rhs);
  for (std::size_t i = 0; i < vars.size(); ++i) value[vars[i]] = x[i];
  return value;
}

Rational measure_deterministic(const Automaton& d) { return state_measures(d)[d.initial()]; }

Rational measure(const Automaton& a, const Limits& limits) {
  return measure_deterministic(deterministic_observer(a, limits));
}

StochasticBuchiGame build_game(const Automaton& a, const Limits& limits) {
  if (a.kind() == Acceptance::cobuchi) throw std::invalid_argument("build_game expects a Büchi or weak automaton");
  StochasticBuchiGame g{a, std::vector<bool>(a.num_states(), false), std::vector<bool>(a.num_states(), false)};
  for (State q = 0; q < a.num_states(); ++q) {
    g.q_rej[q] = measure(rebase(a, q), limits) == 0;
    g.target[q] = g.q_rej[q] || a.accepting(q);
  }
  return g;
}

AlmostSureSolution solve_almost_sure_buchi(const StochasticBuchiGame& g) {
  const Automaton& a = g.automaton;
  const std::size_t n = a.num_states();
  const Letter k = static_cast<Letter>(a.num_letters());
  std::vector<bool> live(n, true);  // candidate winning Random positions

  // Positive-probability reachability of `target ∩ live` staying in `live`;
  // Eve positions (q, σ) are live iff some successor is live.
  auto reach_rank = [&](const std::vector<bool>& in) {
    std::vector<std::size_t> rank(n, SccResult::npos);
    std::deque<State> todo;
    for (State q = 0; q < n; ++q)
      if (in[q] && g.target[q]) {
        rank[q] = 0;
        todo.push_back(q);
      }
    // Backward BFS; a predecessor q reaches via (q, σ) when Eve can pick the successor.
    std::vector<std::vector<State>> pred(n);
    for (State q = 0; q < n; ++q)
      if (in[q])
        for (Letter l = 0; l < k; ++l)
          for (State s : a.successors(q, l))
            if (in[s]) pred[s].push_back(q);
    while (!todo.empty()) {
      State s = todo.front();
      todo.pop_front();
      for (State q : pred[s])
        if (rank[q] == SccResult::npos) {
          rank[q] = rank[s] + 1;
          todo.push_back(q);
        }
    }
    return rank;
  };

  while (true) {
    auto rank = reach_rank(live);
    std::vector<bool> removed(n, false);
    std::deque<State> todo;
    for (State q = 0; q < n; ++q)
      if (!live[q] || rank[q] == SccResult::npos) {
        removed[q] = true;
        if (live[q]) todo.push_back(q);
      }
    // Random attractor: Random reaches a removed position when, for some letter,
    // every σ-successor is removed.
    bool changed = !todo.empty();
    bool grew = true;
    while (grew) {
      grew = false;
      for (State q = 0; q < n; ++q) {
        if (removed[q]) continue;
        for (Letter l = 0; l < k; ++l) {
          const auto& succ = a.successors(q, l);
          if (std::all_of(succ.begin(), succ.end(), [&](State s) { return removed[s]; })) {
            removed[q] = true;
            grew = changed = true;
            break;
          }
        }
      }
    }
    if (!changed) break;
    for (State q = 0; q < n; ++q) live[q] = live[q] && !removed[q];
  }

  auto rank = reach_rank(live);
  AlmostSureSolution sol;
  sol.random_winning = live;
  sol.eve_winning.assign(n, std::vector<bool>(k, false));
  sol.strategy = first_pruning(a);
  for (State q = 0; q < n; ++q)
    for (Letter l = 0; l < k; ++l) {
      std::optional<State> best;
      for (State s : a.successors(q, l))
        if (live[s] && (!best || rank[s] < rank[*best])) best = s;
      if (best) {
        sol.eve_winning[q][l] = true;
        sol.strategy.choice[q][l] = *best;
      }
    }
  return sol;
}

Automaton cosafe_closure(const Automaton& input, const Limits& limits) {
  if (input.kind() == Acceptance::buchi && !is_weak(input))
    throw std::invalid_argument("cosafe_closure expects a co-Büchi automaton");
  Automaton a = cobuchi_reading(input);
  Automaton out = a;
  out.set_name(input.name() + "_cosafe");
  for (State q = 0; q < a.num_states(); ++q)
    if (!a.accepting(q) && !is_universal_state(a, q, limits)) out.set_accepting(q, true);
  return out;
}

Rational measure_gap(const Automaton& a, const Pruning& p, const Limits& limits) {
  return measure(a, limits) - measure_deterministic(apply_pruning(a, p));
}

bool good_prefix(const Automaton& d, const std::vector<Letter>& x, const Limits& limits) {
  if (!is_deterministic(d)) throw std::invalid_argument("good_prefix expects a deterministic automaton");
  State q = d.initial();
  for (Letter l : x) q = d.successors(q, l).front();
  return is_universal_state(d, q, limits);
}

AlmostDbpResult almost_dbp(const Automaton& a, const Limits& limits) {
  AlmostDbpResult r;
  const Rational total = measure(a, limits);
  auto finish = [&](Pruning p, std::string route) {
    r.gap = total - measure_deterministic(apply_pruning(a, p));
    r.almost_dbp = r.gap == 0;
    r.pruning = std::move(p);
    r.route = std::move(route);
    return r;
  };

  if (is_deterministic(a)) return finish(first_pruning(a), "deterministic");

  if (a.kind() != Acceptance::cobuchi && check_sd(a, limits).sd) {
    auto sol = solve_almost_sure_buchi(build_game(a, limits));
    return finish(sol.strategy, "game");
  }

  if ((a.kind() == Acceptance::cobuchi || is_weak(a)) && check_hd(a, limits).hd) {
    Automaton closure = cosafe_closure(a, limits);
    auto d = check_dbp(closure, limits);
    if (d.dbp) return finish(*d.pruning, "cosafe");
  }

  r.route = "exhaustive";
  std::optional<Pruning> best;
  Rational best_value;
  std::vector<Pruning> all;
  try {
    all = enumerate_prunings(a, limits);
  } catch (const ResourceLimit&) {
    r.almost_dbp.reset();
    r.gap = total;
    return r;
  }
  for (auto& p : all) {
    Rational v = measure_deterministic(apply_pruning(a, p));
    if (!best || v > best_value) {
      best_value = v;
      best = p;
      if (v == total) break;
    }
  }
  return finish(*best, "exhaustive");
}

}  // namespace nhier
