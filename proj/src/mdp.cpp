#include "nhier/mdp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "nhier/langops.hpp"
#include "nhier/scc.hpp"
#include "text.hpp"

namespace nhier {

void Mdp::validate() const {
  if (initial >= num_states()) throw InvalidAutomaton("MDP initial state out of range");
  if (actions.size() != num_states()) throw InvalidAutomaton("MDP action table size mismatch");
  for (State s = 0; s < num_states(); ++s) {
    if (label[s] >= alphabet.size()) throw InvalidAutomaton("MDP state " + std::to_string(s) + " has no label");
    if (actions[s].empty()) throw InvalidAutomaton("MDP state " + std::to_string(s) + " has no action");
    for (const auto& act : actions[s]) {
      Rational sum = 0;
      for (const auto& [t, p] : act.dist) {
        if (t >= num_states()) throw InvalidAutomaton("MDP transition target out of range");
        if (p <= 0 || p > 1) throw InvalidAutomaton("MDP probability outside (0,1]");
        sum += p;
      }
      if (sum != 1)
        throw InvalidAutomaton("stochasticity violation: state " + std::to_string(s) + " action " + act.name +
                               " sums to " + to_string(sum));
    }
  }
}

Mdp parse_mdp(std::string_view input) {
  auto lines = text::tokenize(input);
  Mdp m;
  std::optional<std::size_t> n;
  bool have_alphabet = false;
  auto need = [](const text::Tokenized& t, std::size_t k) {
    if (t.tokens.size() != k)
      throw ParseError(t.line, t.tokens[0].second,
                       "'" + t.tokens[0].first + "' expects " + std::to_string(k - 1) + " argument(s)");
  };
  auto need_states = [&](const text::Tokenized& t) {
    if (!n) throw ParseError(t.line, 1, "'states' must come first");
  };
  auto find_action = [&](const text::Tokenized& t, State s, std::size_t i) -> Mdp::Action& {
    const auto& [tok, col] = t.tokens[i];
    for (auto& act : m.actions[s])
      if (act.name == tok) return act;
    throw ParseError(t.line, col, "unknown action '" + tok + "' of state " + std::to_string(s));
  };

  for (const auto& t : lines) {
    const auto& head = t.tokens[0].first;
    if (head == "mdp") {
      need(t, 2);
      m.name = t.tokens[1].first;
    } else if (head == "alphabet") {
      std::vector<std::string> letters;
      for (std::size_t i = 1; i < t.tokens.size(); ++i) letters.push_back(t.tokens[i].first);
      try {
        m.alphabet = Alphabet(std::move(letters));
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.line, 1, e.what());
      }
      have_alphabet = true;
    } else if (head == "states") {
      need(t, 2);
      n = text::parse_index(t, 1, static_cast<std::size_t>(-1), "state count");
      if (*n == 0) throw ParseError(t.line, t.tokens[1].second, "MDP needs at least one state");
      m.label.assign(*n, static_cast<Letter>(-1));
      m.actions.assign(*n, {});
    } else if (head == "initial") {
      need(t, 2);
      need_states(t);
      m.initial = static_cast<State>(text::parse_index(t, 1, *n, "state"));
    } else if (head == "label") {
      need(t, 3);
      need_states(t);
      if (!have_alphabet) throw ParseError(t.line, 1, "'alphabet' must precede 'label'");
      auto s = text::parse_index(t, 1, *n, "state");
      auto l = m.alphabet.find(t.tokens[2].first);
      if (!l) throw ParseError(t.line, t.tokens[2].second, "unknown label '" + t.tokens[2].first + "'");
      m.label[s] = *l;
    } else if (head == "action") {
      need(t, 3);
      need_states(t);
      auto s = text::parse_index(t, 1, *n, "state");
      for (const auto& act : m.actions[s])
        if (act.name == t.tokens[2].first) throw ParseError(t.line, t.tokens[2].second, "duplicate action");
      m.actions[s].push_back({t.tokens[2].first, {}});
    } else if (head == "prob") {
      need(t, 5);
      need_states(t);
      auto s = static_cast<State>(text::parse_index(t, 1, *n, "state"));
      auto& act = find_action(t, s, 2);
      auto dst = static_cast<State>(text::parse_index(t, 3, *n, "state"));
      Rational p;
      try {
        p = parse_rational(t.tokens[4].first);
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.line, t.tokens[4].second, e.what());
      }
      auto it = std::find_if(act.dist.begin(), act.dist.end(), [&](const auto& e) { return e.first == dst; });
      if (it != act.dist.end()) throw ParseError(t.line, t.tokens[3].second, "duplicate probability entry");
      if (p != 0) act.dist.emplace_back(dst, p);
    } else {
      throw ParseError(t.line, t.tokens[0].second, "unknown directive '" + head + "'");
    }
  }
  std::size_t last = lines.empty() ? 1 : lines.back().line;
  if (!have_alphabet) throw ParseError(last, 1, "missing 'alphabet'");
  if (!n) throw ParseError(last, 1, "missing 'states'");
  for (auto& acts : m.actions)
    for (auto& act : acts) std::sort(act.dist.begin(), act.dist.end(), [](auto& x, auto& y) { return x.first < y.first; });
  m.validate();
  return m;
}

Mdp load_mdp(const std::string& path) { return parse_mdp(text::read_file(path)); }

std::string serialize_mdp(const Mdp& m) {
  std::ostringstream out;
  out << "mdp " << m.name << "\nalphabet";
  for (const auto& l : m.alphabet.letters()) out << ' ' << l;
  out << "\nstates " << m.num_states() << "\ninitial " << m.initial << "\n";
  for (State s = 0; s < m.num_states(); ++s) out << "label " << s << ' ' << m.alphabet.name(m.label[s]) << "\n";
  for (State s = 0; s < m.num_states(); ++s)
    for (const auto& act : m.actions[s]) out << "action " << s << ' ' << act.name << "\n";
  for (State s = 0; s < m.num_states(); ++s)
    for (const auto& act : m.actions[s])
      for (const auto& [t, p] : act.dist) out << "prob " << s << ' ' << act.name << ' ' << t << ' ' << to_string(p) << "\n";
  return out.str();
}

Mdp uniform_mdp(const Alphabet& alphabet) {
  Mdp m;
  m.name = "uniform";
  m.alphabet = alphabet;
  const std::size_t k = alphabet.size();
  for (Letter l = 0; l < k; ++l) {
    m.label.push_back(l);
    Mdp::Action act{"*", {}};
    for (State t = 0; t < k; ++t) act.dist.emplace_back(t, Rational(1, k));
    m.actions.push_back({act});
  }
  return m;
}

ProductMdp product(const Mdp& m, const Automaton& a) {
  if (!(m.alphabet == a.alphabet())) throw std::invalid_argument("alphabet mismatch between MDP and automaton");
  ProductMdp p{a, {}, {}};
  std::map<std::pair<State, State>, std::size_t> index;
  auto id = [&](State s, State q) {
    auto [it, fresh] = index.emplace(std::make_pair(s, q), p.nodes.size());
    if (fresh) {
      p.nodes.push_back({s, q});
      p.actions.emplace_back();
    }
    return it->second;
  };
  p.nodes.push_back({m.initial, std::nullopt});
  p.actions.emplace_back();
  for (std::size_t b = 0; b < m.actions[m.initial].size(); ++b) {
    ProductMdp::Action act{b, a.initial(), {}};
    for (const auto& [t, pr] : m.actions[m.initial][b].dist) act.dist.emplace_back(id(t, a.initial()), pr);
    p.actions[0].push_back(std::move(act));
  }
  for (std::size_t v = 1; v < p.nodes.size(); ++v) {
    State s = p.nodes[v].s, q = *p.nodes[v].q;
    for (std::size_t b = 0; b < m.actions[s].size(); ++b)
      for (State q2 : a.successors(q, m.label[s])) {
        ProductMdp::Action act{b, q2, {}};
        for (const auto& [t, pr] : m.actions[s][b].dist) act.dist.emplace_back(id(t, q2), pr);
        p.actions[v].push_back(std::move(act));
      }
  }
  return p;
}

std::vector<std::vector<std::size_t>> maximal_end_components(const ProductMdp& p, const std::vector<bool>& allowed) {
  const std::size_t n = p.size();
  std::vector<bool> alive = allowed.empty() ? std::vector<bool>(n, true) : allowed;
  std::vector<std::vector<bool>> enabled(n);
  for (std::size_t v = 0; v < n; ++v) enabled[v].assign(p.actions[v].size(), alive[v]);

  SccResult scc;
  while (true) {
    Graph g(n);
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v])
        for (std::size_t i = 0; i < p.actions[v].size(); ++i)
          if (enabled[v][i])
            for (const auto& [t, pr] : p.actions[v][i].dist)
              if (alive[t]) g[v].push_back(t);
    scc = tarjan_scc(g, &alive);
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      bool any = false;
      for (std::size_t i = 0; i < p.actions[v].size(); ++i) {
        if (!enabled[v][i]) continue;
        bool inside = std::all_of(p.actions[v][i].dist.begin(), p.actions[v][i].dist.end(), [&](const auto& e) {
          return alive[e.first] && scc.component[e.first] == scc.component[v];
        });
        if (!inside) {
          enabled[v][i] = false;
          changed = true;
        } else {
          any = true;
        }
      }
      if (!any) {
        alive[v] = false;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) groups[scc.component[v]].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [c, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Actions of v whose support stays inside `inside`.
std::vector<std::size_t> internal_actions(const ProductMdp& p, std::size_t v, const std::vector<bool>& inside) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.actions[v].size(); ++i)
    if (std::all_of(p.actions[v][i].dist.begin(), p.actions[v][i].dist.end(), [&](const auto& e) { return inside[e.first]; }))
      out.push_back(i);
  return out;
}

Rational action_value(const ProductMdp::Action& act, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const auto& [t, pr] : act.dist) sum += pr * x[t];
  return sum;
}

}  // namespace

MdpValue max_acceptance_value(const ProductMdp& p) {
  const std::size_t n = p.size();
  const bool cobuchi = p.automaton.kind() == Acceptance::cobuchi;

  // Winning end components and, inside them, a policy that stays and (for Büchi) keeps visiting α.
  std::vector<bool> win(n, false);
  std::vector<std::size_t> policy(n, 0);
  std::vector<bool> target(n, false);  // α nodes inside winning MECs
  if (cobuchi) {
    std::vector<bool> allowed(n, false);
    for (std::size_t v = 0; v < n; ++v) allowed[v] = p.nodes[v].q && !p.accepting(v);
    for (const auto& ec : maximal_end_components(p, allowed))
      for (auto v : ec) {
        win[v] = true;
        target[v] = true;
      }
  } else {
    for (const auto& ec : maximal_end_components(p)) {
      bool hit = std::any_of(ec.begin(), ec.end(), [&](auto v) { return p.accepting(v); });
      if (!hit) continue;
      for (auto v : ec) {
        win[v] = true;
        target[v] = p.accepting(v);
      }
    }
  }
  // Inside winning components: move toward the target along internal actions.
  {
    std::vector<std::size_t> dist(n, SccResult::npos);
    std::deque<std::size_t> todo;
    for (std::size_t v = 0; v < n; ++v)
      if (target[v]) {
        dist[v] = 0;
        todo.push_back(v);
      }
    std::vector<std::vector<std::size_t>> internal(n);
    for (std::size_t v = 0; v < n; ++v)
      if (win[v]) internal[v] = internal_actions(p, v, win);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!win[v]) continue;
        for (auto i : internal[v]) {
          bool reaches = std::any_of(p.actions[v][i].dist.begin(), p.actions[v][i].dist.end(),
                                     [&](const auto& e) { return dist[e.first] != SccResult::npos && dist[e.first] < dist[v]; });
          if (dist[v] == SccResult::npos && reaches) {
            std::size_t best = SccResult::npos;
            for (const auto& e : p.actions[v][i].dist) best = std::min(best, dist[e.first]);
            dist[v] = best + 1;
            policy[v] = i;
            grew = true;
          }
        }
        if (target[v] && !internal[v].empty() && dist[v] == 0) policy[v] = internal[v].front();
      }
    }
  }

  // Nodes that cannot reach a winning node have value 0.
  Graph rev(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& act : p.actions[v])
      for (const auto& [t, pr] : act.dist) rev[t].push_back(v);
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (win[v]) roots.push_back(v);
  auto positive = reachable_from(rev, roots);

  std::vector<std::size_t> var(n, SccResult::npos);
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < n; ++v)
    if (positive[v] && !win[v]) {
      var[v] = vars.size();
      vars.push_back(v);
    }

  // Initial proper policy: step toward the winning set.
  {
    std::vector<std::size_t> dist(n, SccResult::npos);
    for (std::size_t v = 0; v < n; ++v)
      if (win[v]) dist[v] = 0;
    bool grew = true;
    for (std::size_t round = 1; grew; ++round) {
      grew = false;
      std::vector<std::size_t> next = dist;
      for (auto v : vars) {
        if (dist[v] != SccResult::npos) continue;
        for (std::size_t i = 0; i < p.actions[v].size(); ++i) {
          bool reaches = std::any_of(p.actions[v][i].dist.begin(), p.actions[v][i].dist.end(),
                                     [&](const auto& e) { return dist[e.first] != SccResult::npos; });
          if (reaches) {
            next[v] = round;
            policy[v] = i;
            grew = true;
            break;
          }
        }
      }
      dist = std::move(next);
    }
  }

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v)
    if (win[v]) x[v] = 1;
  while (true) {
    // Evaluate the current policy exactly.
    std::vector<std::vector<Rational>> m(vars.size(), std::vector<Rational>(vars.size(), Rational(0)));
    std::vector<Rational> rhs(vars.size(), Rational(0));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto v = vars[i];
      m[i][i] += 1;
      for (const auto& [t, pr] : p.actions[v][policy[v]].dist) {
        if (var[t] != SccResult::npos)
          m[i][var[t]] -= pr;
        else
          rhs[i] += pr * x[t];
      }
    }
    auto sol = solve_linear_system(m, rhs);
    for (std::size_t i = 0; i < vars.size(); ++i) x[vars[i]] = sol[i];

    bool improved = false;
    for (auto v : vars) {
      Rational current = action_value(p.actions[v][policy[v]], x);
      for (std::size_t i = 0; i < p.actions[v].size(); ++i)
        if (action_value(p.actions[v][i], x) > current) {
          current = action_value(p.actions[v][i], x);
          policy[v] = i;
          improved = true;
        }
    }
    if (!improved) break;
  }
  return {x[0], x, policy};
}

Rational psyn(const Mdp& m, const Automaton& a) { return max_acceptance_value(product(m, a)).value; }

Rational psem(const Mdp& m, const Automaton& a, const Limits& limits) {
  return psyn(m, deterministic_observer(a, limits));
}

GfmWitness gfm_witness(const Mdp& m, const Automaton& a, const Limits& limits) {
  GfmWitness w;
  w.psyn = psyn(m, a);
  w.psem = psem(m, a, limits);
  w.equal = w.psyn == w.psem;
  return w;
}

}  // namespace nhier
