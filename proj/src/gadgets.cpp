#include "nhier/gadgets.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "nhier/langops.hpp"
#include "nhier/lasso.hpp"
#include "nhier/probability.hpp"
#include "nhier/scc.hpp"
#include "text.hpp"

namespace nhier {

using text::tokenize;
using text::Tokenized;

namespace {

State find_state(const Automaton& a, const std::string& label) {
  for (State q = 0; q < a.num_states(); ++q)
    if (a.state_name(q) == label) return q;
  throw std::invalid_argument("no state named " + label);
}

std::string head_label(std::size_t k, int i) { return "q" + std::to_string(k) + "^" + std::to_string(i); }

std::size_t count_prefixed(const Alphabet& alpha, char c) {
  return std::count_if(alpha.letters().begin(), alpha.letters().end(),
                       [&](const std::string& s) { return !s.empty() && s[0] == c; });
}

}  // namespace

// ---------------------------------------------------------------- SAT

void CnfFormula::validate() const {
  if (clauses.empty()) throw std::invalid_argument("formula needs at least one clause");
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    std::set<int> vars;
    for (int lit : clauses[j]) {
      std::size_t v = static_cast<std::size_t>(std::abs(lit));
      if (lit == 0 || v > num_vars)
        throw std::invalid_argument("clause " + std::to_string(j + 1) + ": literal out of range");
      if (std::find(clauses[j].begin(), clauses[j].end(), -lit) != clauses[j].end())
        throw std::invalid_argument("clause " + std::to_string(j + 1) + " is a tautology");
      vars.insert(static_cast<int>(v));
    }
    if (vars.size() < 2)
      throw std::invalid_argument("clause " + std::to_string(j + 1) + " mentions fewer than two variables");
  }
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const std::vector<int>& c) {
    return std::any_of(c.begin(), c.end(), [&](int lit) { return assignment.at(std::abs(lit) - 1) == (lit > 0); });
  });
}

CnfFormula parse_dimacs(std::string_view input) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> open;
  std::istringstream in{std::string(input)};
  std::string line;
  for (std::size_t ln = 1; std::getline(in, line); ++ln) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      long long nv = -1, nc = -1;
      if (header || !(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        throw ParseError(ln, 1, "bad problem line");
      header = true;
      f.num_vars = static_cast<std::size_t>(nv);
      declared = static_cast<std::size_t>(nc);
      continue;
    }
    if (!header) throw ParseError(ln, 1, "clause before problem line");
    std::istringstream cs(line);
    long long lit;
    while (cs >> lit) {
      if (lit == 0) {
        if (open.empty()) throw ParseError(ln, 1, "empty clause");
        f.clauses.push_back(open);
        open.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(lit)) > f.num_vars) throw ParseError(ln, 1, "variable out of range");
      if (std::find(open.begin(), open.end(), lit) == open.end()) open.push_back(static_cast<int>(lit));
    }
    if (!cs.eof()) throw ParseError(ln, 1, "expected integer literal");
  }
  if (!open.empty()) f.clauses.push_back(open);
  if (!header) throw ParseError(1, 1, "missing problem line");
  if (f.clauses.size() != declared)
    throw ParseError(1, 1, "problem line declares " + std::to_string(declared) + " clauses, found " +
                               std::to_string(f.clauses.size()));
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::size_t count_models(const CnfFormula& f) {
  if (f.num_vars > 24) throw ResourceLimit("too many variables for enumeration");
  std::size_t count = 0;
  std::vector<bool> a(f.num_vars);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
    for (std::size_t k = 0; k < f.num_vars; ++k) a[k] = (bits >> k) & 1;
    if (f.satisfied_by(a)) ++count;
  }
  return count;
}

bool brute_force_sat(const CnfFormula& f) { return count_models(f) > 0; }

Automaton sat_to_nbw(const CnfFormula& f) {
  f.validate();
  const std::size_t n = f.num_vars, m = f.clauses.size();
  std::vector<std::string> letters;
  for (std::size_t k = 1; k <= n; ++k) letters.push_back("x" + std::to_string(k));
  for (std::size_t j = 1; j <= m; ++j) letters.push_back("c" + std::to_string(j));
  auto x = [](std::size_t k) { return static_cast<Letter>(k - 1); };
  auto c = [n](std::size_t j) { return static_cast<Letter>(n + j - 1); };

  Automaton a(Alphabet(letters), 0, Acceptance::buchi);
  a.set_name("A_phi");
  State p = a.add_state(false, "p");
  State q0 = a.add_state(true, "q0");
  State sx = a.add_state(false, "sX");
  State sc = a.add_state(false, "sC");
  State t1 = a.add_state(false, "t1");
  // d[j][k]: after x1·cj···x_{k-1}·cj, expecting x_k; e[j][k]: after x_k, expecting cj.
  std::vector<std::vector<State>> d(m + 1, std::vector<State>(n + 1)), e = d;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = 2; k <= n; ++k) {
      d[j][k] = a.add_state(false, "d" + std::to_string(j) + "_" + std::to_string(k));
      e[j][k] = a.add_state(false, "e" + std::to_string(j) + "_" + std::to_string(k));
    }
  std::vector<std::array<State, 2>> gadget(n + 1);
  for (std::size_t k = 1; k <= n; ++k)
    for (int i = 0; i < 2; ++i) gadget[k][i] = a.add_state(false, head_label(k, i));
  State sink = a.add_state(false, "sink");

  auto expects_x = [&](State s, State on_x1) {
    a.add_transition(s, x(1), on_x1);
    for (std::size_t k = 2; k <= n; ++k) a.add_transition(s, x(k), sc);
    for (std::size_t j = 1; j <= m; ++j) a.add_transition(s, c(j), sink);
  };
  auto expects_c = [&](State s) {
    for (std::size_t k = 1; k <= n; ++k) a.add_transition(s, x(k), sink);
  };

  expects_x(q0, t1);
  expects_x(sx, t1);
  expects_c(sc);
  for (std::size_t j = 1; j <= m; ++j) a.add_transition(sc, c(j), sx);
  expects_c(t1);
  for (std::size_t j = 1; j <= m; ++j) a.add_transition(t1, c(j), n >= 2 ? d[j][2] : p);
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = 2; k <= n; ++k) {
      State s = d[j][k];
      a.add_transition(s, x(1), t1);
      for (std::size_t k2 = 2; k2 <= n; ++k2) a.add_transition(s, x(k2), k2 == k ? e[j][k] : sc);
      for (std::size_t j2 = 1; j2 <= m; ++j2) a.add_transition(s, c(j2), sink);
      expects_c(e[j][k]);
      for (std::size_t j2 = 1; j2 <= m; ++j2)
        a.add_transition(e[j][k], c(j2), j2 != j ? sx : k == n ? p : d[j][k + 1]);
    }

  for (std::size_t k = 1; k <= n; ++k) {
    a.add_transition(p, x(k), gadget[k][0]);
    a.add_transition(p, x(k), gadget[k][1]);
  }
  for (std::size_t j = 1; j <= m; ++j) a.add_transition(p, c(j), sink);
  for (std::size_t k = 1; k <= n; ++k)
    for (int i = 0; i < 2; ++i) {
      State g = gadget[k][i];
      expects_c(g);
      for (std::size_t j = 1; j <= m; ++j) {
        const auto& cl = f.clauses[j - 1];
        int lit = i ? static_cast<int>(k) : -static_cast<int>(k);
        bool in = std::find(cl.begin(), cl.end(), lit) != cl.end();
        a.add_transition(g, c(j), in ? q0 : p);
      }
    }
  for (Letter l = 0; l < n + m; ++l) a.add_transition(sink, l, sink);
  a.set_initial(p);
  a.validate();
  return a;
}

Pruning assignment_pruning(const Automaton& a_phi, const std::vector<bool>& bits) {
  const std::size_t n = count_prefixed(a_phi.alphabet(), 'x');
  if (bits.size() != n)
    throw std::invalid_argument("assignment has " + std::to_string(bits.size()) + " bits, automaton has " +
                                std::to_string(n) + " variables");
  Pruning pr = first_pruning(a_phi);
  State p = find_state(a_phi, "p");
  for (std::size_t k = 1; k <= n; ++k) pr.choice[p][k - 1] = find_state(a_phi, head_label(k, bits[k - 1] ? 1 : 0));
  return pr;
}

std::size_t count_equivalent_prunings(const Automaton& a_phi, const Limits& limits) {
  const std::size_t n = count_prefixed(a_phi.alphabet(), 'x');
  std::size_t count = 0;
  std::vector<bool> bits(n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    for (std::size_t k = 0; k < n; ++k) bits[k] = (v >> k) & 1;
    if (contains(a_phi, apply_pruning(a_phi, assignment_pruning(a_phi, bits)), limits)) ++count;
  }
  return count;
}

bool clause_strategy_accepts(const Automaton& a, const LassoWord& w) {
  const std::size_t n = count_prefixed(a.alphabet(), 'x');
  const State p = find_state(a, "p"), q0 = find_state(a, "q0");
  std::vector<std::array<State, 2>> gadget(n + 1);
  for (std::size_t k = 1; k <= n; ++k)
    for (int i = 0; i < 2; ++i) gadget[k][i] = find_state(a, head_label(k, i));
  auto clause_side = [&](std::size_t k, Letter cj) -> std::optional<int> {
    for (int i = 0; i < 2; ++i)
      if (a.successors(gadget[k][i], cj) == StateSet{q0}) return i;
    return std::nullopt;
  };

  const std::size_t period = w.stem.size() + w.loop.size();
  using Config = std::tuple<State, Letter, std::size_t>;  // state, previous letter (npos: none), position
  const Letter none = static_cast<Letter>(-1);
  std::map<Config, std::size_t> seen;
  std::vector<State> trace;
  State q = a.initial();
  Letter prev = none;
  std::size_t pos = 0;
  while (true) {
    Config cfg{q, prev, pos};
    if (auto it = seen.find(cfg); it != seen.end()) {
      return std::any_of(trace.begin() + it->second, trace.end(), [&](State s) { return a.accepting(s); });
    }
    seen.emplace(cfg, trace.size());
    trace.push_back(q);
    Letter l = w.at(pos);
    State next;
    if (q == p && l < n) {
      std::size_t k = l + 1;
      int i = 0;
      if (prev != none && k > 1)
        if (auto side = clause_side(k, prev)) i = *side;
      next = gadget[k][i];
    } else {
      next = a.successors(q, l).front();
    }
    q = next;
    prev = l;
    pos = pos + 1 < period ? pos + 1 : w.stem.size();
  }
}

LassoWord sample_pattern_word(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t k) { return static_cast<Letter>(std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)); };
  auto block = [&](std::vector<Letter>& out) {
    for (std::size_t r = pick(3); r > 0; --r) {
      out.push_back(pick(n));
      out.push_back(static_cast<Letter>(n) + pick(m));
    }
    Letter cj = static_cast<Letter>(n) + pick(m);
    for (Letter k = 0; k < n; ++k) {
      out.push_back(k);
      out.push_back(cj);
    }
  };
  LassoWord w;
  for (std::size_t r = pick(3); r > 0; --r) block(w.stem);
  for (std::size_t r = pick(3) + 1; r > 0; --r) block(w.loop);
  return w;
}

bool hd_strategy_audit(const Automaton& a_phi, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = count_prefixed(a_phi.alphabet(), 'x');
  const std::size_t m = a_phi.num_letters() - n;
  for (std::size_t i = 0; i < samples; ++i)
    if (!clause_strategy_accepts(a_phi, sample_pattern_word(n, m, seed + i))) return false;
  return true;
}

// ---------------------------------------------------------------- graphs

std::vector<std::vector<std::size_t>> UGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    adj[u - 1].push_back(v - 1);
    adj[v - 1].push_back(u - 1);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

bool UGraph::connected() const {
  if (n == 0) return false;
  auto r = reachable_from(adjacency(), {0});
  return std::all_of(r.begin(), r.end(), [](bool b) { return b; });
}

UGraph parse_graph(std::string_view input) {
  UGraph g;
  bool have_n = false;
  for (const Tokenized& t : tokenize(input)) {
    const auto& head = t.tokens[0].first;
    if (!have_n && (head == "n" || std::isdigit(static_cast<unsigned char>(head[0])))) {
      std::size_t idx = head == "n" ? 1 : 0;
      if (t.tokens.size() != idx + 1) throw ParseError(t.line, t.tokens[0].second, "expected `n <count>`");
      g.n = text::parse_index(t, idx, 1000, "vertex count");
      have_n = true;
    } else if (head == "edge") {
      if (!have_n) throw ParseError(t.line, t.tokens[0].second, "edge before vertex count");
      if (t.tokens.size() != 3) throw ParseError(t.line, t.tokens[0].second, "expected `edge <u> <v>`");
      std::size_t u = text::parse_index(t, 1, g.n + 1, "vertex"), v = text::parse_index(t, 2, g.n + 1, "vertex");
      if (u == 0 || v == 0) throw ParseError(t.line, t.tokens[1].second, "vertices are numbered from 1");
      if (u == v) throw ParseError(t.line, t.tokens[1].second, "self-loop edge");
      g.edges.emplace_back(u, v);
    } else {
      throw ParseError(t.line, t.tokens[0].second, "unknown directive " + head);
    }
  }
  if (!have_n) throw ParseError(1, 1, "missing vertex count");
  return g;
}

bool is_hamiltonian(const UGraph& g) {
  if (g.n < 2) return false;
  auto adj = g.adjacency();
  auto edge = [&](std::size_t u, std::size_t v) { return std::binary_search(adj[u].begin(), adj[u].end(), v); };
  std::vector<std::size_t> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = edge(perm.back(), perm.front());
    for (std::size_t i = 0; ok && i + 1 < g.n; ++i) ok = edge(perm[i], perm[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

namespace {

Alphabet vertex_alphabet(std::size_t n) {
  std::vector<std::string> letters;
  for (std::size_t i = 1; i <= n; ++i) letters.push_back(std::to_string(i));
  return Alphabet(letters);
}

}  // namespace

Automaton hamcycle_to_ncw(const UGraph& g) {
  if (g.n < 2) throw std::invalid_argument("graph needs at least two vertices");
  if (!g.connected()) throw std::invalid_argument("graph is not connected");
  auto adj = g.adjacency();
  Automaton a(vertex_alphabet(g.n), 0, Acceptance::cobuchi);
  a.set_name("A_G");
  std::vector<State> loop(g.n), transit(g.n);
  for (std::size_t i = 0; i < g.n; ++i) loop[i] = a.add_state(false, "L" + std::to_string(i + 1));
  for (std::size_t i = 0; i < g.n; ++i) transit[i] = a.add_state(true, "T" + std::to_string(i + 1));
  for (std::size_t i = 0; i < g.n; ++i)
    for (State s : {loop[i], transit[i]})
      for (Letter j = 0; j < g.n; ++j) {
        if (j == i)
          a.add_transition(s, j, loop[i]);
        else
          for (auto k : adj[i]) a.add_transition(s, j, transit[k]);
      }
  a.set_initial(transit[0]);
  return a;
}

Automaton eventually_constant_dcw(std::size_t n) {
  Automaton a(vertex_alphabet(n), 0, Acceptance::cobuchi);
  a.set_name("eventually_constant");
  std::vector<State> loop(n), transit(n);
  for (std::size_t i = 0; i < n; ++i) loop[i] = a.add_state(false, "L" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) transit[i] = a.add_state(true, "T" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (State s : {loop[i], transit[i]})
      for (Letter j = 0; j < n; ++j) a.add_transition(s, j, j == i ? loop[i] : transit[j]);
  a.set_initial(transit[0]);
  return a;
}

// ---------------------------------------------------------------- Turing machines

void TuringMachine::validate() const {
  if (gamma.empty()) throw std::invalid_argument("empty tape alphabet");
  if (blank >= gamma.size()) throw std::invalid_argument("blank symbol not in gamma");
  if (states.size() < 3) throw std::invalid_argument("need initial, accepting and rejecting states");
  if (space == 0) throw std::invalid_argument("space bound must be positive");
  for (std::size_t q = 0; q < states.size(); ++q)
    for (std::size_t s = 0; s < gamma.size(); ++s)
      if (!rules.count({q, s})) throw std::invalid_argument("no rule for (" + states[q] + ", " + gamma[s] + ")");
}

TuringMachine parse_tm(std::string_view input) {
  TuringMachine t;
  std::optional<std::string> blank;
  std::vector<std::pair<const Tokenized*, std::size_t>> rules;
  auto lines = tokenize(input);
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) -> std::optional<std::size_t> {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  };
  bool have_space = false;
  for (const Tokenized& t0 : lines) {
    const auto& head = t0.tokens[0].first;
    auto args = [&](std::size_t k) {
      if (t0.tokens.size() != k + 1)
        throw ParseError(t0.line, t0.tokens[0].second, "`" + head + "` expects " + std::to_string(k) + " arguments");
    };
    if (head == "tm") {
      args(1);
      t.name = t0.tokens[1].first;
    } else if (head == "gamma" || head == "states") {
      auto& dst = head == "gamma" ? t.gamma : t.states;
      for (std::size_t i = 1; i < t0.tokens.size(); ++i) {
        const auto& [tok, col] = t0.tokens[i];
        if (tok == "$" || tok.find(':') != std::string::npos) throw ParseError(t0.line, col, "reserved symbol " + tok);
        if (index_of(dst, tok)) throw ParseError(t0.line, col, "duplicate " + tok);
        dst.push_back(tok);
      }
    } else if (head == "blank") {
      args(1);
      blank = t0.tokens[1].first;
    } else if (head == "rule") {
      args(5);
      rules.emplace_back(&t0, 0);
    } else if (head == "space") {
      args(1);
      t.space = text::parse_index(t0, 1, 1'000'000, "space bound");
      have_space = true;
    } else {
      throw ParseError(t0.line, t0.tokens[0].second, "unknown directive " + head);
    }
  }
  if (!blank) throw ParseError(1, 1, "missing blank");
  if (!have_space) throw ParseError(1, 1, "missing space bound");
  auto b = index_of(t.gamma, *blank);
  if (!b) throw ParseError(1, 1, "blank " + *blank + " not in gamma");
  t.blank = *b;
  for (auto [line, _] : rules) {
    auto field = [&](std::size_t i, const std::vector<std::string>& v, const char* what) {
      auto r = index_of(v, line->tokens[i].first);
      if (!r) throw ParseError(line->line, line->tokens[i].second, std::string("unknown ") + what);
      return *r;
    };
    std::size_t q = field(1, t.states, "state"), a = field(2, t.gamma, "symbol");
    std::size_t q2 = field(3, t.states, "state"), b2 = field(4, t.gamma, "symbol");
    const auto& dir = line->tokens[5].first;
    if (dir != "L" && dir != "R") throw ParseError(line->line, line->tokens[5].second, "direction must be L or R");
    if (!t.rules.emplace(std::make_pair(q, a), TuringMachine::Move{q2, b2, dir == "R"}).second)
      throw ParseError(line->line, line->tokens[0].second, "duplicate rule");
  }
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
  return t;
}

namespace {

struct TmLetters {
  std::size_t g, q;
  bool sep(Letter l) const { return l == 0; }
  bool cell(Letter l) const { return l >= 1 && l <= g; }
  bool head(Letter l) const { return l > g; }
  std::size_t symbol(Letter l) const { return head(l) ? (l - 1 - g) % g : l - 1; }
  std::size_t state(Letter l) const { return (l - 1 - g) / g; }
  Letter plain(std::size_t s) const { return static_cast<Letter>(1 + s); }
  Letter with_head(std::size_t st, std::size_t s) const { return static_cast<Letter>(1 + g + st * g + s); }
};

TmLetters letters_of(const TuringMachine& t) { return {t.gamma.size(), t.states.size()}; }

}  // namespace

Alphabet tm_alphabet(const TuringMachine& t) {
  std::vector<std::string> letters{"$"};
  for (const auto& s : t.gamma) letters.push_back(s);
  for (const auto& q : t.states)
    for (const auto& s : t.gamma) letters.push_back(q + ":" + s);
  return Alphabet(letters);
}

Letter tm_next(const TuringMachine& t, Letter left, Letter mid, Letter right) {
  const TmLetters L = letters_of(t);
  if (L.sep(mid)) return mid;
  int heads = L.head(left) + L.head(mid) + L.head(right);
  int seps = L.sep(left) + L.sep(mid) + L.sep(right);
  if (heads >= 2 || seps >= 2) return 0;
  if (heads == 0) return mid;
  auto rule = [&](Letter h) { return t.rules.at({L.state(h), L.symbol(h)}); };
  if (L.head(left)) {
    auto mv = rule(left);
    return mv.right ? L.with_head(mv.next, L.symbol(mid)) : mid;
  }
  if (L.head(right)) {
    auto mv = rule(right);
    return mv.right ? mid : L.with_head(mv.next, L.symbol(mid));
  }
  auto mv = rule(mid);
  if (L.sep(left) && !mv.right) return L.with_head(mv.next, mv.write);
  return L.plain(mv.write);
}

Automaton tm_to_nww(const TuringMachine& t, const Limits& limits) {
  t.validate();
  const TmLetters L = letters_of(t);
  const Alphabet sigma = tm_alphabet(t);
  const std::size_t k = sigma.size(), n0 = t.space;
  const std::size_t estimate = 2 + k + k * k + k * n0 + n0 + 4 * n0;
  if (estimate > limits.max_states) throw ResourceLimit("tm_to_nww needs " + std::to_string(estimate) + " states");
  const std::size_t acc_state = 1;

  Automaton a(sigma, 0, Acceptance::weak);
  a.set_name(t.name + "_nww");
  const State init = a.add_state(false, "I");
  const State sink = a.add_state(true, "acc");
  auto name = [&](Letter l) { return sigma.name(l); };

  std::vector<State> first(k);
  std::vector<std::vector<State>> second(k, std::vector<State>(k));
  std::vector<std::vector<State>> wait(k, std::vector<State>(n0));
  for (Letter x = 0; x < k; ++x) first[x] = a.add_state(false, "n[" + name(x) + "]");
  for (Letter x = 0; x < k; ++x)
    for (Letter y = 0; y < k; ++y) second[x][y] = a.add_state(false, "n[" + name(x) + "," + name(y) + "]");
  for (Letter e = 0; e < k; ++e)
    for (std::size_t r = 0; r < n0; ++r) wait[e][r] = a.add_state(false, "w[" + name(e) + "," + std::to_string(r) + "]");
  std::vector<State> nosep(n0 + 1);
  for (std::size_t c = 1; c <= n0; ++c) nosep[c] = a.add_state(false, "h" + std::to_string(c));
  std::vector<std::array<State, 2>> shape(n0), accconf(n0);
  for (std::size_t p = 0; p < n0; ++p)
    for (int h = 0; h < 2; ++h) {
      shape[p][h] = a.add_state(false, "s" + std::to_string(p) + "_" + std::to_string(h));
      accconf[p][h] = a.add_state(false, "f" + std::to_string(p) + "_" + std::to_string(h));
    }

  for (State q = 0; q < a.num_states(); ++q)
    for (Letter x = 0; x < k; ++x) a.add_transition(q, x, q == sink ? sink : init);

  for (Letter x = 0; x < k; ++x) {
    a.add_transition(init, x, first[x]);
    if (L.sep(x)) {
      a.add_transition(init, x, shape[0][0]);
      a.add_transition(init, x, accconf[0][0]);
    } else {
      a.add_transition(init, x, n0 == 0 ? sink : nosep[1]);
    }
    for (Letter y = 0; y < k; ++y) {
      a.add_transition(first[x], y, second[x][y]);
      for (Letter z = 0; z < k; ++z) a.add_transition(second[x][y], z, wait[tm_next(t, x, y, z)][n0 - 1]);
    }
  }
  for (Letter e = 0; e < k; ++e)
    for (std::size_t r = 0; r < n0; ++r)
      for (Letter x = 0; x < k; ++x) {
        if (r > 0)
          a.add_transition(wait[e][r], x, wait[e][r - 1]);
        else if (x != e)
          a.add_transition(wait[e][r], x, sink);
      }
  for (std::size_t c = 1; c <= n0; ++c)
    for (Letter x = 0; x < k; ++x)
      if (!L.sep(x)) a.add_transition(nosep[c], x, c == n0 ? sink : nosep[c + 1]);
  for (std::size_t p = 0; p < n0; ++p)
    for (int h = 0; h < 2; ++h)
      for (Letter x = 0; x < k; ++x) {
        // Shape: after `$`, exactly one head among the next n0 cells.
        int h2 = h + (L.head(x) ? 1 : 0);
        if (L.sep(x) || h2 > 1)
          a.add_transition(shape[p][h], x, sink);
        else if (p + 1 == n0)
          a.add_transition(shape[p][h], x, h2 == 0 ? sink : init);
        else
          a.add_transition(shape[p][h], x, shape[p + 1][h2]);
        // Accepting configuration: `$`, cells, one head in the accepting state.
        if (L.sep(x) || (L.head(x) && (h == 1 || L.state(x) != acc_state))) continue;
        int seen = h + (L.head(x) ? 1 : 0);
        if (p + 1 == n0) {
          if (seen) a.add_transition(accconf[p][h], x, sink);
        } else {
          a.add_transition(accconf[p][h], x, accconf[p + 1][seen]);
        }
      }
  a.set_initial(init);
  return reachable_trim(a);
}

namespace {

struct TmConfig {
  std::size_t state, head;
  std::vector<std::size_t> tape;
  auto operator<=>(const TmConfig&) const = default;
};

std::vector<TmConfig> empty_tape_run(const TuringMachine& t, std::size_t& loop_start) {
  t.validate();
  TmConfig c{0, 0, std::vector<std::size_t>(t.space, t.blank)};
  std::map<TmConfig, std::size_t> seen;
  std::vector<TmConfig> run;
  while (!seen.count(c)) {
    seen.emplace(c, run.size());
    run.push_back(c);
    auto mv = t.rules.at({c.state, c.tape[c.head]});
    c.tape[c.head] = mv.write;
    c.state = mv.next;
    if (mv.right)
      c.head = std::min(c.head + 1, t.space - 1);
    else if (c.head > 0)
      --c.head;
  }
  loop_start = seen.at(c);
  return run;
}

}  // namespace

LassoWord empty_tape_word(const TuringMachine& t) {
  const TmLetters L = letters_of(t);
  std::size_t loop_start = 0;
  auto run = empty_tape_run(t, loop_start);
  LassoWord w;
  for (std::size_t i = 0; i < run.size(); ++i) {
    auto& out = i < loop_start ? w.stem : w.loop;
    out.push_back(0);
    for (std::size_t cell = 0; cell < t.space; ++cell)
      out.push_back(cell == run[i].head ? L.with_head(run[i].state, run[i].tape[cell]) : L.plain(run[i].tape[cell]));
  }
  return w;
}

bool accepts_empty_tape(const TuringMachine& t) {
  std::size_t loop_start = 0;
  for (const auto& c : empty_tape_run(t, loop_start)) {
    if (c.state == 1) return true;
    if (c.state == 2) return false;
  }
  return false;
}

// ---------------------------------------------------------------- mutators

Automaton dbp_inflate(const Automaton& a) {
  if (is_empty(a)) throw std::invalid_argument("dbp_inflate needs a non-empty language");
  std::optional<State> target;
  for (State q = 0; q < a.num_states() && !target; ++q)
    for (State s = 0; s < a.num_states() && !target; ++s)
      for (Letter l = 0; l < a.num_letters(); ++l) {
        const auto& succ = a.successors(s, l);
        if (std::binary_search(succ.begin(), succ.end(), q)) {
          target = q;
          break;
        }
      }
  if (!target) throw std::invalid_argument("no state has an incoming transition");
  const State q = *target;
  Automaton out = a;
  out.set_name(a.name() + "_inflated");
  const State copy = out.add_state(a.accepting(q), a.state_name(q).empty() ? "" : a.state_name(q) + "'");
  for (Letter l = 0; l < a.num_letters(); ++l)
    for (State s : a.successors(q, l)) out.add_transition(copy, l, s);
  for (State s = 0; s < out.num_states(); ++s)
    for (Letter l = 0; l < a.num_letters(); ++l) {
      const auto& succ = out.successors(s, l);
      if (std::binary_search(succ.begin(), succ.end(), q)) out.add_transition(s, l, copy);
    }
  return out;
}

Automaton sd_break(const Automaton& a, Letter sigma) {
  if (sigma >= a.num_letters()) throw std::invalid_argument("letter out of range");
  const auto& succ = a.successors(a.initial(), sigma);
  if (std::all_of(succ.begin(), succ.end(), [&](State s) { return is_empty(rebase(a, s)); }))
    throw std::invalid_argument("no accepted word starts with " + a.alphabet().name(sigma));
  Automaton out = a;
  out.set_name(a.name() + "_sdbreak");
  State sink = out.add_state(a.kind() == Acceptance::cobuchi, "sink");
  for (Letter l = 0; l < a.num_letters(); ++l) out.add_transition(sink, l, sink);
  out.add_transition(a.initial(), sigma, sink);
  return out;
}

// ---------------------------------------------------------------- corpus

namespace {

struct Edge {
  State from;
  const char* letter;
  State to;
};

Automaton build(const std::string& name, Acceptance kind, std::vector<std::string> labels, StateSet alpha,
                std::vector<Edge> edges) {
  Automaton a(Alphabet({"a", "b"}), 0, kind);
  a.set_name(name);
  for (std::size_t q = 0; q < labels.size(); ++q)
    a.add_state(std::binary_search(alpha.begin(), alpha.end(), static_cast<State>(q)), labels[q]);
  for (const auto& e : edges) a.add_transition(e.from, a.alphabet().at(e.letter), e.to);
  a.validate();
  return a;
}

}  // namespace

std::vector<CorpusEntry> corpus() {
  using A = Acceptance;
  std::vector<CorpusEntry> c;
  c.push_back({"W",
               build("W", A::weak, {"q0", "qa", "qb", "qacc"}, {3},
                     {{0, "a", 1}, {0, "a", 2}, {0, "b", 1}, {0, "b", 2}, {1, "a", 3}, {1, "b", 0},
                      {2, "b", 3}, {2, "a", 0}, {3, "a", 3}, {3, "b", 3}}),
               {"weak", "!deterministic", "sd", "!hd", "!dbp", "universal", "states-universal"}});
  c.push_back({"A1",
               build("A1", A::weak, {"q0", "qa", "qb", "qrej"}, {0, 1, 2},
                     {{0, "a", 1}, {0, "a", 2}, {0, "b", 1}, {0, "b", 2}, {1, "a", 0}, {1, "b", 3},
                      {2, "b", 0}, {2, "a", 3}, {3, "a", 3}, {3, "b", 3}}),
               {"weak", "!sd", "universal", "measure=1", "prunings-measure-0", "!dbp"}});
  c.push_back({"A1p",
               build("A1p", A::weak, {"q0", "qa", "qb", "qrej"}, {0, 1, 2},
                     {{0, "a", 1}, {0, "b", 1}, {1, "a", 0}, {1, "b", 3}, {2, "b", 0}, {2, "a", 3},
                      {3, "a", 3}, {3, "b", 3}}),
               {"weak", "deterministic", "measure=0"}});
  c.push_back({"A2",
               build("A2", A::cobuchi, {"q0", "sa", "sb"}, {0},
                     {{0, "a", 1}, {0, "a", 2}, {0, "b", 1}, {0, "b", 2}, {1, "a", 1}, {1, "a", 2},
                      {1, "b", 0}, {2, "b", 1}, {2, "b", 2}, {2, "a", 0}}),
               {"!deterministic", "sd", "!hd", "!dbp", "universal", "states-universal", "measure=1",
                "prunings-measure-0", "prunings-strongly-connected"}});
  c.push_back({"A2p",
               build("A2p", A::cobuchi, {"q0", "sa", "sb"}, {0},
                     {{0, "a", 1}, {0, "b", 2}, {1, "a", 1}, {1, "b", 0}, {2, "b", 2}, {2, "a", 0}}),
               {"deterministic", "measure=0", "prunings-strongly-connected"}});
  c.push_back({"F5",
               build("F5", A::weak, {"q0", "qacc", "sink"}, {1},
                     {{0, "a", 0}, {0, "b", 0}, {0, "b", 1}, {1, "b", 1}, {1, "a", 2}, {2, "a", 2}, {2, "b", 2}}),
               {"weak", "!sd", "accept:;b", "accept:aab;b", "accept:abab;b", "reject:;a", "reject:;ab",
                "reject:b;abb"}});
  c.push_back({"U", build("U", A::buchi, {"q0"}, {0}, {{0, "a", 0}, {0, "b", 0}}),
               {"deterministic", "universal", "measure=1"}});
  c.push_back({"Z", build("Z", A::buchi, {"q0"}, {}, {{0, "a", 0}, {0, "b", 0}}),
               {"deterministic", "empty", "measure=0"}});
  c.push_back({"Uc", build("Uc", A::cobuchi, {"q0"}, {}, {{0, "a", 0}, {0, "b", 0}}),
               {"deterministic", "universal", "measure=1"}});
  return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  static const std::vector<CorpusEntry> entries = corpus();
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::invalid_argument("no corpus automaton named " + name);
}

std::vector<std::string> check_manifest(const CorpusEntry& e, const Limits& limits) {
  const Automaton& a = e.automaton;
  std::vector<std::string> failed;
  auto all_prunings = [&](auto pred) {
    auto ps = enumerate_prunings(a, limits);
    return std::all_of(ps.begin(), ps.end(), [&](const Pruning& p) { return pred(apply_pruning(a, p)); });
  };
  for (const std::string& prop : e.manifest) {
    bool holds;
    if (prop.rfind("accept:", 0) == 0) {
      holds = accepts(a, parse_lasso(a.alphabet(), prop.substr(7)));
    } else if (prop.rfind("reject:", 0) == 0) {
      holds = !accepts(a, parse_lasso(a.alphabet(), prop.substr(7)));
    } else if (prop.rfind("measure=", 0) == 0) {
      holds = measure(a, limits) == parse_rational(prop.substr(8));
    } else {
      bool negated = prop[0] == '!';
      std::string p = negated ? prop.substr(1) : prop;
      bool v;
      if (p == "weak")
        v = is_weak(a);
      else if (p == "deterministic")
        v = is_deterministic(a);
      else if (p == "sd")
        v = check_sd(a, limits).sd;
      else if (p == "hd")
        v = check_hd(a, limits).hd;
      else if (p == "dbp")
        v = check_dbp(a, limits).dbp;
      else if (p == "universal")
        v = is_universal_state(a, a.initial(), limits);
      else if (p == "empty")
        v = is_empty(a);
      else if (p == "states-universal") {
        auto reach = reachable_states(a);
        v = std::all_of(reach.begin(), reach.end(), [&](State q) { return is_universal_state(a, q, limits); });
      } else if (p == "prunings-measure-0")
        v = all_prunings([](const Automaton& d) { return measure_deterministic(d) == 0; });
      else if (p == "prunings-strongly-connected")
        v = all_prunings([](const Automaton& d) { return scc_decomposition(d).components.size() == 1; });
      else
        throw std::invalid_argument("unknown manifest property " + prop);
      holds = v != negated;
    }
    if (!holds) failed.push_back(prop);
  }
  return failed;
}

}  // namespace nhier
