#include "nhier/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nhier/langops.hpp"
#include "nhier/parity.hpp"
#include "nhier/scc.hpp"
#include "nhier/sd_determinize.hpp"

namespace nhier {

bool is_valid_pruning(const Automaton& a, const Pruning& p) {
  if (p.choice.size() != a.num_states()) return false;
  for (State q = 0; q < a.num_states(); ++q) {
    if (p.choice[q].size() != a.num_letters()) return false;
    for (Letter l = 0; l < a.num_letters(); ++l) {
      const auto& succ = a.successors(q, l);
      if (!std::binary_search(succ.begin(), succ.end(), p.choice[q][l])) return false;
    }
  }
  return true;
}

Automaton apply_pruning(const Automaton& a, const Pruning& p) {
  if (!is_valid_pruning(a, p)) throw std::invalid_argument("pruning does not match the automaton");
  Automaton out = a;
  out.set_name(a.name() + "_pruned");
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l) out.set_successors(q, l, {p.choice[q][l]});
  return out;
}

Pruning first_pruning(const Automaton& a) {
  Pruning p;
  p.choice.assign(a.num_states(), std::vector<State>(a.num_letters(), 0));
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l) p.choice[q][l] = a.successors(q, l).front();
  return p;
}

std::string format_pruning(const Automaton& a, const Pruning& p) {
  std::ostringstream out;
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      if (a.successors(q, l).size() > 1) out << q << ' ' << a.alphabet().name(l) << ' ' << p.choice[q][l] << "\n";
  return out.str();
}

std::vector<Pruning> enumerate_prunings(const Automaton& a, const Limits& limits) {
  std::vector<std::pair<State, Letter>> pairs;
  std::size_t count = 1;
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      if (a.successors(q, l).size() > 1) {
        pairs.emplace_back(q, l);
        count *= a.successors(q, l).size();
        if (count > limits.budget) throw ResourceLimit("number of prunings exceeds the search budget");
      }
  std::vector<Pruning> out;
  out.reserve(count);
  Pruning cur = first_pruning(a);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == pairs.size()) {
      out.push_back(cur);
      return;
    }
    auto [q, l] = pairs[i];
    for (State s : a.successors(q, l)) {
      cur.choice[q][l] = s;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

SdResult check_sd(const Automaton& a, const Limits& limits) {
  std::map<std::pair<State, State>, bool> cache;
  for (State q : reachable_states(a))
    for (Letter l = 0; l < a.num_letters(); ++l) {
      const auto& succ = a.successors(q, l);
      for (std::size_t j = 1; j < succ.size(); ++j) {
        auto key = std::make_pair(succ[0], succ[j]);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, state_equiv(a, succ[0], succ[j], limits)).first;
        if (!it->second) return {false, SdCounterexample{q, l, succ[0], succ[j]}};
      }
    }
  return {true, std::nullopt};
}

Automaton prune_subsumed(const Automaton& a, const Limits& limits) {
  std::map<std::pair<State, State>, bool> le;
  auto contained = [&](State s, State t) {
    auto key = std::make_pair(s, t);
    auto it = le.find(key);
    if (it == le.end()) it = le.emplace(key, s == t || contains(rebase(a, s), rebase(a, t), limits)).first;
    return it->second;
  };
  Automaton out = a;
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l) {
      const auto& succ = a.successors(q, l);
      if (succ.size() < 2) continue;
      StateSet keep;
      for (State s : succ) {
        bool dominated = std::any_of(succ.begin(), succ.end(),
                                     [&](State t) { return t != s && contained(s, t) && !contained(t, s); });
        if (!dominated) keep.push_back(s);
      }
      out.set_successors(q, l, std::move(keep));
    }
  return out;
}

// ---------------------------------------------------------------- HD game

std::vector<State> HdStrategy::run(const std::vector<Letter>& word) const {
  std::vector<State> out{arena.initial()};
  State d = observer.initial();
  for (Letter l : word) {
    out.push_back(move.at({out.back(), d, l}));
    d = observer.successors(d, l).front();
  }
  return out;
}

bool HdStrategy::accepts(const LassoWord& w) const {
  const std::size_t positions = w.stem.size() + w.loop.size();
  std::map<std::tuple<State, State, std::size_t>, std::size_t> seen;
  std::vector<State> trace;
  State q = arena.initial(), d = observer.initial();
  std::size_t pos = 0;
  while (true) {
    auto key = std::make_tuple(q, d, pos);
    auto it = seen.find(key);
    if (it != seen.end()) {
      bool hit = false;
      for (std::size_t i = it->second; i < trace.size(); ++i) hit = hit || arena.accepting(trace[i]);
      return arena.kind() == Acceptance::cobuchi ? !hit : hit;
    }
    seen.emplace(key, trace.size());
    trace.push_back(q);
    Letter l = w.at(pos);
    q = move.at({q, d, l});
    d = observer.successors(d, l).front();
    pos = pos + 1 < positions ? pos + 1 : w.stem.size();
  }
}

namespace {

HdStrategy trivial_strategy(const Automaton& d) {
  HdStrategy s{d, d, {}};
  for (State q = 0; q < d.num_states(); ++q)
    for (Letter l = 0; l < d.num_letters(); ++l) s.move[{q, q, l}] = d.successors(q, l).front();
  return s;
}

// Letter game: Adam picks letters at (q, d), Eve resolves the arena's choice.
HdResult solve_letter_game(const Automaton& arena, const Automaton& observer, const Limits& limits) {
  const bool cobuchi = arena.kind() == Acceptance::cobuchi;
  ParityGame g;
  std::map<std::pair<State, State>, std::size_t> adam;
  auto adam_id = [&](State q, State d) {
    auto [it, fresh] = adam.emplace(std::make_pair(q, d), 0);
    if (fresh) {
      if (g.size() >= limits.max_states) throw ResourceLimit("letter game exceeds max-states budget");
      unsigned prio;
      if (cobuchi)
        prio = observer.accepting(d) ? 2 : arena.accepting(q) ? 1 : 0;
      else
        prio = arena.accepting(q) ? 2 : observer.accepting(d) ? 1 : 0;
      it->second = g.add_vertex(1, prio);
    }
    return it->second;
  };
  std::size_t start = adam_id(arena.initial(), observer.initial());
  std::vector<std::pair<std::size_t, std::pair<State, State>>> todo{{start, {arena.initial(), observer.initial()}}};
  std::map<std::size_t, std::tuple<State, State, Letter>> eve_of;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto [v, qd] = todo[i];
    auto [q, d] = qd;
    for (Letter l = 0; l < arena.num_letters(); ++l) {
      std::size_t e = g.add_vertex(0, 0);
      eve_of.emplace(e, std::make_tuple(q, d, l));
      g.succ[v].push_back(e);
      State d2 = observer.successors(d, l).front();
      for (State q2 : arena.successors(q, l)) {
        std::size_t before = g.size();
        std::size_t t = adam_id(q2, d2);
        if (t >= before) todo.push_back({t, {q2, d2}});
        g.succ[e].push_back(t);
      }
    }
  }
  auto sol = solve_parity(g);
  HdResult r;
  r.hd = sol.eve_wins[start];
  if (r.hd) {
    HdStrategy s{arena, observer, {}};
    std::map<std::size_t, State> arena_of;
    for (const auto& [key, v] : adam) arena_of[v] = key.first;
    for (const auto& [e, key] : eve_of) s.move[key] = arena_of.at(sol.strategy[e]);
    r.strategy = std::move(s);
  }
  return r;
}

}  // namespace

HdResult check_hd(const Automaton& input, const Limits& limits) {
  Automaton a = reachable_trim(input);
  if (is_deterministic(a)) return {true, trivial_strategy(a), {}};
  Automaton pruned = prune_subsumed(a, limits);

  if (a.kind() == Acceptance::cobuchi || is_weak(a)) {
    Automaton arena = cobuchi_reading(pruned);
    Automaton observer = determinize_ncw(cobuchi_reading(a), limits);
    return solve_letter_game(arena, observer, limits);
  }

  HdResult r;
  auto sd = check_sd(pruned, limits);
  if (!sd.sd) {
    r.caveats.push_back("not SD after subsumption pruning");
    return r;
  }
  Automaton observer = determinize_sd_nbw(pruned, false, limits);
  if (!contains(a, observer, limits)) {
    r.caveats.push_back("subsumption pruning changed the language");
    return r;
  }
  return solve_letter_game(pruned, observer, limits);
}

// ---------------------------------------------------------------- DBP search

DbpResult check_dbp(const Automaton& a, const Limits& limits) {
  DbpResult r;
  std::vector<std::pair<State, Letter>> pairs;
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      if (a.successors(q, l).size() > 1) pairs.emplace_back(q, l);
  Pruning chosen = first_pruning(a);
  if (pairs.empty()) {
    r.dbp = true;
    r.pruning = chosen;
    return r;
  }

  auto rec = [&](auto&& self, Automaton& cur, std::size_t i) -> bool {
    if (i == pairs.size()) return contains(a, cur, limits);
    auto [q, l] = pairs[i];
    auto options = a.successors(q, l);
    auto reach = reachable_states(cur);
    if (!std::binary_search(reach.begin(), reach.end(), q)) {
      // Choices at unreachable states cannot matter.
      chosen.choice[q][l] = options.front();
      cur.set_successors(q, l, {options.front()});
      if (self(self, cur, i + 1)) return true;
      cur.set_successors(q, l, options);
      return false;
    }
    for (State s : options) {
      if (++r.explored > limits.budget) throw ResourceLimit("DBP search exceeds the search budget");
      chosen.choice[q][l] = s;
      cur.set_successors(q, l, {s});
      bool viable = true;
      if (i + 1 < pairs.size()) {
        auto partial = contains_without_ranks(a, cur, limits);
        viable = !partial.has_value() || *partial;
      }
      if (viable && self(self, cur, i + 1)) return true;
    }
    cur.set_successors(q, l, options);
    return false;
  };

  Automaton cur = a;
  r.dbp = rec(rec, cur, 0);
  if (r.dbp) r.pruning = chosen;
  return r;
}

// ---------------------------------------------------------------- classification

ClassificationReport classify(const Automaton& a, const Limits& limits) {
  ClassificationReport r;
  r.deterministic = is_deterministic(a);
  r.weak = is_weak(a);
  auto guarded = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const ResourceLimit& e) {
      r.caveats.push_back(std::string(what) + ": " + e.what());
    } catch (const Unsupported& e) {
      r.caveats.push_back(std::string(what) + ": " + e.what());
    }
  };
  guarded("sd", [&] {
    auto s = check_sd(a, limits);
    r.sd = s.sd;
    r.sd_counterexample = s.counterexample;
  });
  guarded("hd", [&] {
    auto h = check_hd(a, limits);
    r.hd = h.hd;
    for (auto& c : h.caveats) r.caveats.push_back("hd: " + c);
  });
  guarded("dbp", [&] {
    auto d = check_dbp(a, limits);
    r.dbp = d.dbp;
    r.dbp_pruning = d.pruning;
  });
  return r;
}

std::string format_report(const Automaton& a, const ClassificationReport& r, bool kv) {
  auto tri = [](const std::optional<bool>& b) -> std::string { return b ? (*b ? "true" : "false") : "unknown"; };
  std::ostringstream out;
  const char* sep = kv ? " " : ": ";
  out << "automaton" << sep << a.name() << "\n";
  out << "kind" << sep << to_string(a.kind()) << "\n";
  out << "states" << sep << a.num_states() << "\n";
  out << "deterministic" << sep << (r.deterministic ? "true" : "false") << "\n";
  out << "weak" << sep << (r.weak ? "true" : "false") << "\n";
  out << "sd" << sep << tri(r.sd) << "\n";
  if (r.sd_counterexample) {
    const auto& c = *r.sd_counterexample;
    out << "sd_counterexample" << sep << c.q << ' ' << a.alphabet().name(c.letter) << ' ' << c.s << ' ' << c.s2 << "\n";
  }
  out << "hd" << sep << tri(r.hd) << "\n";
  out << "dbp" << sep << tri(r.dbp) << "\n";
  if (r.dbp_pruning) {
    std::istringstream lines(format_pruning(a, *r.dbp_pruning));
    std::string line;
    while (std::getline(lines, line)) out << "dbp_choice" << sep << line << "\n";
  }
  for (const auto& c : r.caveats) out << "caveat" << sep << c << "\n";
  return out.str();
}

}  // namespace nhier
