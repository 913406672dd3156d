#include "support.hpp"

#include <algorithm>
#include <set>

#include "nhier/langops.hpp"
#include "nhier/scc.hpp"

namespace nhier::testing {

namespace {

using Bits = std::vector<bool>;
using Matrix = std::vector<Bits>;

Bits step(const Automaton& a, const Bits& s, Letter l) {
  Bits out(a.num_states(), false);
  for (State q = 0; q < a.num_states(); ++q)
    if (s[q])
      for (State t : a.successors(q, l)) out[t] = true;
  return out;
}

Matrix closure(Matrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

bool naive_member(const Automaton& a, const LassoWord& w) {
  const std::size_t n = a.num_states();
  Bits x(n, false);
  x[a.initial()] = true;
  for (Letter l : w.stem) x = step(a, x, l);
  Bits boundary(n, false);
  std::set<Bits> seen;
  while (seen.insert(x).second) {
    for (std::size_t q = 0; q < n; ++q) boundary[q] = boundary[q] || x[q];
    for (Letter l : w.loop) x = step(a, x, l);
  }

  // Block edges s -> t over one copy of v: any path, paths visiting α, paths avoiding α.
  Matrix any(n, Bits(n, false)), hit(n, Bits(n, false)), avoid(n, Bits(n, false));
  for (State s = 0; s < n; ++s) {
    Bits plain(n, false), flagged(n, false), clean(n, false);
    plain[s] = true;
    clean[s] = !a.accepting(s);
    for (Letter l : w.loop) {
      Bits p2 = step(a, plain, l), f2 = step(a, flagged, l), c2 = step(a, clean, l);
      for (State t = 0; t < n; ++t) {
        if (p2[t] && a.accepting(t)) f2[t] = true;
        if (a.accepting(t)) c2[t] = false;
      }
      plain = p2, flagged = f2, clean = c2;
    }
    for (State t = 0; t < n; ++t) any[s][t] = plain[t], hit[s][t] = flagged[t], avoid[s][t] = clean[t];
  }
  Matrix reach = closure(any);
  if (a.kind() == Acceptance::cobuchi) {
    Matrix creach = closure(avoid);
    for (State s = 0; s < n; ++s)
      if (boundary[s])
        for (State x0 = 0; x0 < n; ++x0)
          if (reach[s][x0] && !a.accepting(x0))
            for (State y = 0; y < n; ++y)
              if (avoid[x0][y] && creach[y][x0]) return true;
    return false;
  }
  for (State s = 0; s < n; ++s)
    if (boundary[s])
      for (State x0 = 0; x0 < n; ++x0)
        if (reach[s][x0])
          for (State y = 0; y < n; ++y)
            if (hit[x0][y] && reach[y][x0]) return true;
  return false;
}

Automaton random_automaton(Rng& rng, std::size_t n, std::size_t k, Acceptance kind, std::size_t max_succ) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < k; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
  Automaton a(Alphabet(letters), 0, kind);
  for (std::size_t q = 0; q < n; ++q) a.add_state(pick(rng, 0, 1) == 1);
  for (State q = 0; q < n; ++q)
    for (Letter l = 0; l < k; ++l)
      for (std::size_t c = pick(rng, 1, max_succ); c > 0; --c) a.add_transition(q, l, static_cast<State>(pick(rng, 0, n - 1)));
  if (kind == Acceptance::weak) {
    auto scc = tarjan_scc(state_graph(a));
    std::vector<bool> acc(scc.count);
    for (std::size_t c = 0; c < scc.count; ++c) acc[c] = pick(rng, 0, 1) == 1;
    for (State q = 0; q < n; ++q) a.set_accepting(q, acc[scc.component[q]]);
  }
  return a;
}

Automaton random_deterministic(Rng& rng, std::size_t n, std::size_t k, Acceptance kind) {
  return random_automaton(rng, n, k, kind, 1);
}

Automaton duplicate_states(Rng& rng, const Automaton& input, std::size_t copies) {
  Automaton a = input;
  for (std::size_t c = 0; c < copies; ++c) {
    std::vector<std::pair<State, Letter>> into;
    State s = 0;
    for (int attempt = 0; attempt < 20 && into.empty(); ++attempt) {
      auto reach = reachable_states(a);
      s = reach[pick(rng, 0, reach.size() - 1)];
      for (State q : reach)
        for (Letter l = 0; l < a.num_letters(); ++l) {
          const auto& succ = a.successors(q, l);
          if (std::binary_search(succ.begin(), succ.end(), s)) into.emplace_back(q, l);
        }
    }
    if (into.empty()) break;
    State copy = a.add_state(a.accepting(s));
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State t : a.successors(s, l)) a.add_transition(copy, l, t);
    bool added = false;
    for (auto [q, l] : into)
      if (pick(rng, 0, 1) == 1) {
        a.add_transition(q, l, copy);
        added = true;
      }
    if (!added) a.add_transition(into.front().first, into.front().second, copy);
  }
  return a;
}

Automaton random_sd_nbw(Rng& rng, std::size_t max_states, bool weak) {
  while (true) {
    std::size_t base = pick(rng, 2, max_states - 1);
    Automaton d = reachable_trim(random_deterministic(rng, base, 2, weak ? Acceptance::weak : Acceptance::buchi));
    if (d.num_states() >= max_states) continue;
    // Every state is a copy of a state of d; successors are copies of d's successor.
    std::vector<State> origin;
    for (State q = 0; q < d.num_states(); ++q) origin.push_back(q);
    for (std::size_t c = pick(rng, 1, max_states - d.num_states()); c > 0; --c)
      origin.push_back(static_cast<State>(pick(rng, 0, d.num_states() - 1)));
    Automaton a(d.alphabet(), 0, d.kind());
    for (State o : origin) a.add_state(d.accepting(o));
    for (State y = 0; y < origin.size(); ++y)
      for (Letter l = 0; l < d.num_letters(); ++l) {
        State target = d.successors(origin[y], l).front();
        std::vector<State> copies;
        for (State z = 0; z < origin.size(); ++z)
          if (origin[z] == target) copies.push_back(z);
        bool any = false;
        for (State z : copies)
          if (pick(rng, 0, 1) == 1) a.add_transition(y, l, z), any = true;
        if (!any) a.add_transition(y, l, copies[pick(rng, 0, copies.size() - 1)]);
      }
    if (is_deterministic(reachable_trim(a))) continue;
    return a;
  }
}

Automaton random_hd_ncw(Rng& rng, std::size_t max_states) {
  while (true) {
    Automaton n = random_automaton(rng, pick(rng, 2, 3), 2, Acceptance::cobuchi);
    Automaton d = reachable_trim(determinize_ncw(n));
    if (d.num_states() + 1 > max_states) continue;
    d.set_kind(Acceptance::cobuchi);
    Automaton a = duplicate_states(rng, d, pick(rng, 1, std::min<std::size_t>(2, max_states - d.num_states())));
    if (is_deterministic(reachable_trim(a))) continue;
    return a;
  }
}

Mdp random_mdp(Rng& rng, const Alphabet& alphabet, std::size_t max_states) {
  Mdp m;
  m.name = "random";
  m.alphabet = alphabet;
  const std::size_t n = pick(rng, 1, max_states);
  m.label.resize(n);
  m.actions.resize(n);
  static const Rational splits[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4)};
  for (State s = 0; s < n; ++s) {
    m.label[s] = static_cast<Letter>(pick(rng, 0, alphabet.size() - 1));
    for (std::size_t act = pick(rng, 1, 2), i = 0; i < act; ++i) {
      Mdp::Action a;
      a.name = "a" + std::to_string(i);
      State t1 = static_cast<State>(pick(rng, 0, n - 1)), t2 = static_cast<State>(pick(rng, 0, n - 1));
      if (t1 == t2) {
        a.dist = {{t1, Rational(1)}};
      } else {
        Rational p = splits[pick(rng, 0, 3)];
        a.dist = {{std::min(t1, t2), p}, {std::max(t1, t2), 1 - p}};
      }
      m.actions[s].push_back(a);
    }
  }
  m.validate();
  return m;
}

}  // namespace nhier::testing
