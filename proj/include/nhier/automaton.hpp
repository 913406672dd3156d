#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nhier {

using State = std::uint32_t;
using Letter = std::uint32_t;
using StateSet = std::vector<State>;  // sorted, unique

enum class Acceptance { buchi, cobuchi, weak };

std::string_view to_string(Acceptance kind);
Acceptance parse_acceptance(std::string_view text);

/// Raised for malformed `.aut`, `.mdp`, DIMACS, graph or TM input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Structural invariant violated (totality, weakness, bad ids, ...).
class InvalidAutomaton : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction or search exceeded its configured budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operation has no implemented route for this input.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Budgets shared by the exponential constructions and searches.
struct Limits {
  std::size_t max_states = 1'000'000;  // states of any single constructed automaton/game
  std::size_t budget = 1'000'000;      // candidates in exhaustive searches
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  const std::string& name(Letter l) const { return letters_.at(l); }
  const std::vector<std::string>& letters() const { return letters_; }
  std::optional<Letter> find(std::string_view token) const;
  Letter at(std::string_view token) const;  // throws std::out_of_range
  bool single_char() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Letter> index_;
};

/// State-based ω-automaton with a Büchi, co-Büchi or weak condition.
class Automaton {
 public:
  Automaton() = default;
  Automaton(Alphabet alphabet, std::size_t num_states, Acceptance kind);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_letters() const { return alphabet_.size(); }
  std::size_t num_states() const { return succ_.size(); }
  Acceptance kind() const { return kind_; }
  State initial() const { return initial_; }
  const std::string& name() const { return name_; }
  bool accepting(State q) const { return accepting_.at(q); }
  StateSet accepting_states() const;
  const StateSet& successors(State q, Letter l) const { return succ_.at(q).at(l); }
  const std::string& state_name(State q) const { return state_names_.at(q); }
  bool has_state_names() const;

  State add_state(bool accepting = false, std::string label = {});
  void add_transition(State from, Letter letter, State to);
  void set_successors(State from, Letter letter, StateSet to);
  void set_accepting(State q, bool value);
  void set_initial(State q);
  void set_kind(Acceptance kind) { kind_ = kind; }
  void set_name(std::string name) { name_ = std::move(name); }
  void set_state_name(State q, std::string label);

  std::size_t num_transitions() const;
  bool is_total() const;
  /// Throws InvalidAutomaton when not total or, for kind weak, when an SCC is mixed.
  void validate() const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  Alphabet alphabet_;
  std::string name_ = "A";
  Acceptance kind_ = Acceptance::buchi;
  State initial_ = 0;
  std::vector<std::vector<StateSet>> succ_;
  std::vector<bool> accepting_;
  std::vector<std::string> state_names_;
};

/// u·v^ω over letter indices of some alphabet.
struct LassoWord {
  std::vector<Letter> stem;
  std::vector<Letter> loop;  // non-empty

  Letter at(std::size_t i) const {
    return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
  }
  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

/// Parses `u;v` (letters concatenated when every letter is one character,
/// comma separated otherwise).
LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text);
std::string format_lasso(const Alphabet& alphabet, const LassoWord& word);
std::string format_word(const Alphabet& alphabet, const std::vector<Letter>& word);

struct ParseOptions {
  bool allow_partial = false;
};

Automaton parse_automaton(std::string_view text, ParseOptions options = {});
std::string serialize_automaton(const Automaton& a);
Automaton load_automaton(const std::string& path, ParseOptions options = {});

/// Adds one kind-appropriate rejecting sink when some (state, letter) has no successor.
Automaton complete_automaton(const Automaton& a);
/// Drops states unreachable from the initial state; surviving ids keep their relative order.
Automaton reachable_trim(const Automaton& a);
/// Same automaton with a different initial state.
Automaton rebase(const Automaton& a, State q);
/// States reachable from the initial state, sorted.
StateSet reachable_states(const Automaton& a);

bool is_deterministic(const Automaton& a);

std::string format_state_set(const StateSet& s);

}  // namespace nhier
