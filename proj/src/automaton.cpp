#include "nhier/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

#include "nhier/scc.hpp"
#include "text.hpp"

namespace nhier {

std::string_view to_string(Acceptance kind) {
  switch (kind) {
    case Acceptance::buchi: return "buchi";
    case Acceptance::cobuchi: return "cobuchi";
    case Acceptance::weak: return "weak";
  }
  return "?";
}

Acceptance parse_acceptance(std::string_view text) {
  if (text == "buchi") return Acceptance::buchi;
  if (text == "cobuchi") return Acceptance::cobuchi;
  if (text == "weak") return Acceptance::weak;
  throw std::invalid_argument("unknown acceptance kind '" + std::string(text) + "'");
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("alphabet must not be empty");
  for (Letter i = 0; i < letters_.size(); ++i) {
    const auto& tok = letters_[i];
    if (tok.empty() || tok.find_first_of(" \t\r\n;,") != std::string::npos)
      throw std::invalid_argument("invalid letter token '" + tok + "'");
    if (!index_.emplace(tok, i).second)
      throw std::invalid_argument("duplicate letter '" + tok + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::at(std::string_view token) const {
  auto l = find(token);
  if (!l) throw std::out_of_range("letter '" + std::string(token) + "' not in alphabet");
  return *l;
}

bool Alphabet::single_char() const {
  return std::all_of(letters_.begin(), letters_.end(), [](const auto& s) { return s.size() == 1; });
}

Automaton::Automaton(Alphabet alphabet, std::size_t num_states, Acceptance kind)
    : alphabet_(std::move(alphabet)), kind_(kind) {
  succ_.assign(num_states, std::vector<StateSet>(alphabet_.size()));
  accepting_.assign(num_states, false);
  state_names_.assign(num_states, {});
}

StateSet Automaton::accepting_states() const {
  StateSet out;
  for (State q = 0; q < num_states(); ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

bool Automaton::has_state_names() const {
  return std::any_of(state_names_.begin(), state_names_.end(), [](const auto& s) { return !s.empty(); });
}

State Automaton::add_state(bool accepting, std::string label) {
  succ_.emplace_back(alphabet_.size());
  accepting_.push_back(accepting);
  state_names_.push_back(std::move(label));
  return static_cast<State>(succ_.size() - 1);
}

void Automaton::add_transition(State from, Letter letter, State to) {
  if (from >= num_states() || to >= num_states())
    throw InvalidAutomaton("transition endpoint out of range");
  auto& s = succ_.at(from).at(letter);
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

void Automaton::set_successors(State from, Letter letter, StateSet to) {
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());
  for (State t : to)
    if (t >= num_states()) throw InvalidAutomaton("transition endpoint out of range");
  succ_.at(from).at(letter) = std::move(to);
}

void Automaton::set_accepting(State q, bool value) { accepting_.at(q) = value; }

void Automaton::set_initial(State q) {
  if (q >= num_states()) throw InvalidAutomaton("initial state out of range");
  initial_ = q;
}

void Automaton::set_state_name(State q, std::string label) { state_names_.at(q) = std::move(label); }

std::size_t Automaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : succ_)
    for (const auto& s : row) n += s.size();
  return n;
}

bool Automaton::is_total() const {
  for (const auto& row : succ_)
    for (const auto& s : row)
      if (s.empty()) return false;
  return true;
}

void Automaton::validate() const {
  if (num_states() == 0) throw InvalidAutomaton("automaton has no states");
  if (initial_ >= num_states()) throw InvalidAutomaton("initial state out of range");
  for (State q = 0; q < num_states(); ++q)
    for (Letter l = 0; l < num_letters(); ++l)
      if (succ_[q][l].empty())
        throw InvalidAutomaton("totality violation: state " + std::to_string(q) + " has no successor on '" +
                               alphabet_.name(l) + "'");
  if (kind_ == Acceptance::weak && !is_weak(*this))
    throw InvalidAutomaton("weak-homogeneity violation: some SCC mixes accepting and rejecting states");
}

bool is_deterministic(const Automaton& a) {
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      if (a.successors(q, l).size() != 1) return false;
  return true;
}

std::string format_state_set(const StateSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------- lassos

namespace {

std::vector<Letter> parse_letters(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> out;
  if (text.empty()) return out;
  bool comma = text.find(',') != std::string_view::npos;
  if (!comma && alphabet.single_char()) {
    for (char c : text) out.push_back(alphabet.at(std::string_view(&c, 1)));
    return out;
  }
  if (!comma && alphabet.find(text)) return {alphabet.at(text)};
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto tok = text.substr(start, end - start);
    if (tok.empty()) throw std::invalid_argument("empty letter in word '" + std::string(text) + "'");
    out.push_back(alphabet.at(tok));
    start = end + 1;
  }
  return out;
}

}  // namespace

LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
    throw std::invalid_argument("lasso must have the form 'u;v'");
  LassoWord w{parse_letters(alphabet, text.substr(0, semi)), parse_letters(alphabet, text.substr(semi + 1))};
  if (w.loop.empty()) throw std::invalid_argument("lasso loop must not be empty");
  return w;
}

std::string format_word(const Alphabet& alphabet, const std::vector<Letter>& word) {
  std::string out;
  bool compact = alphabet.single_char();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i && !compact) out += ',';
    out += alphabet.name(word[i]);
  }
  return out;
}

std::string format_lasso(const Alphabet& alphabet, const LassoWord& word) {
  return format_word(alphabet, word.stem) + ";" + format_word(alphabet, word.loop);
}

// ---------------------------------------------------------------- .aut

using text::parse_index;
using text::tokenize;
using text::Tokenized;

Automaton parse_automaton(std::string_view text, ParseOptions options) {
  auto lines = tokenize(text);
  std::string name = "A";
  std::optional<Acceptance> kind;
  std::optional<Alphabet> alphabet;
  std::optional<std::size_t> n;
  std::optional<std::size_t> initial;
  std::optional<Automaton> a;
  std::vector<State> accepting;

  auto need = [](const Tokenized& t, std::size_t k) {
    if (t.tokens.size() != k)
      throw ParseError(t.line, t.tokens[0].second,
                       "'" + t.tokens[0].first + "' expects " + std::to_string(k - 1) + " argument(s)");
  };
  auto ensure_built = [&](const Tokenized& t) -> Automaton& {
    if (!a) {
      if (!alphabet || !n)
        throw ParseError(t.line, 1, "'alphabet' and 'states' must precede transitions and names");
      a.emplace(*alphabet, *n, kind.value_or(Acceptance::buchi));
    }
    return *a;
  };

  for (const auto& t : lines) {
    const auto& head = t.tokens[0].first;
    if (head == "automaton") {
      if (t.tokens.size() < 2) throw ParseError(t.line, 1, "'automaton' expects a name");
      name = t.tokens[1].first;
    } else if (head == "kind") {
      need(t, 2);
      try {
        kind = parse_acceptance(t.tokens[1].first);
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.line, t.tokens[1].second, e.what());
      }
    } else if (head == "alphabet") {
      if (a) throw ParseError(t.line, 1, "'alphabet' after transitions");
      std::vector<std::string> letters;
      for (std::size_t i = 1; i < t.tokens.size(); ++i) letters.push_back(t.tokens[i].first);
      try {
        alphabet.emplace(std::move(letters));
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.line, 1, e.what());
      }
    } else if (head == "states") {
      need(t, 2);
      if (a) throw ParseError(t.line, 1, "'states' after transitions");
      n = parse_index(t, 1, static_cast<std::size_t>(-1), "state count");
      if (*n == 0) throw ParseError(t.line, t.tokens[1].second, "automaton needs at least one state");
    } else if (head == "initial") {
      need(t, 2);
      if (!n) throw ParseError(t.line, 1, "'states' must precede 'initial'");
      initial = parse_index(t, 1, *n, "state");
    } else if (head == "accepting") {
      if (!n) throw ParseError(t.line, 1, "'states' must precede 'accepting'");
      for (std::size_t i = 1; i < t.tokens.size(); ++i)
        accepting.push_back(static_cast<State>(parse_index(t, i, *n, "state")));
    } else if (head == "name") {
      if (t.tokens.size() < 3) throw ParseError(t.line, 1, "'name' expects a state and a label");
      auto& aut = ensure_built(t);
      auto q = parse_index(t, 1, *n, "state");
      std::string label = t.tokens[2].first;
      for (std::size_t i = 3; i < t.tokens.size(); ++i) label += " " + t.tokens[i].first;
      aut.set_state_name(static_cast<State>(q), label);
    } else if (head == "trans") {
      need(t, 4);
      auto& aut = ensure_built(t);
      auto src = parse_index(t, 1, *n, "state");
      auto letter = alphabet->find(t.tokens[2].first);
      if (!letter) throw ParseError(t.line, t.tokens[2].second, "unknown letter '" + t.tokens[2].first + "'");
      auto dst = parse_index(t, 3, *n, "state");
      aut.add_transition(static_cast<State>(src), *letter, static_cast<State>(dst));
    } else {
      throw ParseError(t.line, t.tokens[0].second, "unknown directive '" + head + "'");
    }
  }
  if (!alphabet) throw ParseError(lines.empty() ? 1 : lines.back().line, 1, "missing 'alphabet'");
  if (!n) throw ParseError(lines.empty() ? 1 : lines.back().line, 1, "missing 'states'");
  if (!kind) throw ParseError(lines.empty() ? 1 : lines.back().line, 1, "missing 'kind'");
  if (!a) a.emplace(*alphabet, *n, *kind);
  a->set_kind(*kind);
  a->set_name(name);
  a->set_initial(static_cast<State>(initial.value_or(0)));
  for (State q : accepting) a->set_accepting(q, true);
  if (!options.allow_partial) {
    a->validate();
  } else if (*kind == Acceptance::weak && !is_weak(*a)) {
    throw InvalidAutomaton("weak-homogeneity violation: some SCC mixes accepting and rejecting states");
  }
  return *a;
}

std::string serialize_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "automaton " << a.name() << "\n";
  out << "kind " << to_string(a.kind()) << "\n";
  out << "alphabet";
  for (const auto& l : a.alphabet().letters()) out << ' ' << l;
  out << "\nstates " << a.num_states() << "\n";
  out << "initial " << a.initial() << "\n";
  out << "accepting";
  for (State q : a.accepting_states()) out << ' ' << q;
  out << "\n";
  for (State q = 0; q < a.num_states(); ++q)
    if (!a.state_name(q).empty()) out << "name " << q << ' ' << a.state_name(q) << "\n";
  for (State q = 0; q < a.num_states(); ++q)
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State s : a.successors(q, l)) out << "trans " << q << ' ' << a.alphabet().name(l) << ' ' << s << "\n";
  return out.str();
}

Automaton load_automaton(const std::string& path, ParseOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_automaton(buf.str(), options);
}

// ---------------------------------------------------------------- transformations

Automaton complete_automaton(const Automaton& a) {
  if (a.is_total()) return a;
  Automaton out = a;
  // co-Büchi runs trapped in an α sink are rejecting; Büchi/weak runs in a non-α sink are.
  State sink = out.add_state(a.kind() == Acceptance::cobuchi, "sink");
  for (State q = 0; q < out.num_states(); ++q)
    for (Letter l = 0; l < out.num_letters(); ++l)
      if (out.successors(q, l).empty()) out.add_transition(q, l, sink);
  return out;
}

StateSet reachable_states(const Automaton& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> todo{a.initial()};
  seen[a.initial()] = true;
  while (!todo.empty()) {
    State q = todo.back();
    todo.pop_back();
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (State s : a.successors(q, l))
        if (!seen[s]) {
          seen[s] = true;
          todo.push_back(s);
        }
  }
  StateSet out;
  for (State q = 0; q < a.num_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

Automaton reachable_trim(const Automaton& a) {
  auto keep = reachable_states(a);
  if (keep.size() == a.num_states()) return a;
  std::vector<State> remap(a.num_states(), static_cast<State>(-1));
  for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<State>(i);
  Automaton out(a.alphabet(), keep.size(), a.kind());
  out.set_name(a.name());
  for (State q : keep) {
    out.set_accepting(remap[q], a.accepting(q));
    out.set_state_name(remap[q], a.state_name(q));
    for (Letter l = 0; l < a.num_letters(); ++l) {
      StateSet succ;
      for (State s : a.successors(q, l)) succ.push_back(remap[s]);
      out.set_successors(remap[q], l, std::move(succ));
    }
  }
  out.set_initial(remap[a.initial()]);
  return out;
}

Automaton rebase(const Automaton& a, State q) {
  Automaton out = a;
  out.set_initial(q);
  return out;
}

}  // namespace nhier
