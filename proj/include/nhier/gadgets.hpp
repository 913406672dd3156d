#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nhier/automaton.hpp"
#include "nhier/hierarchy.hpp"

namespace nhier {

// ---------------------------------------------------------------- SAT

/// CNF over variables 1..n; literals are signed variable indices.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws std::invalid_argument unless m ≥ 1 and every clause mentions at least
  /// two distinct variables and is not a tautology.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;  // assignment[k-1] = x_k
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);
/// Number of satisfying assignments, by enumeration.
std::size_t count_models(const CnfFormula& f);
bool brute_force_sat(const CnfFormula& f);

/// The Büchi automaton A_φ over x1..xn, c1..cm: initial state "p", α = {"q0"}.
Automaton sat_to_nbw(const CnfFormula& f);
/// Pruning of A_φ keeping p --x_k--> q_k^{bits[k-1]}.
Pruning assignment_pruning(const Automaton& a_phi, const std::vector<bool>& bits);
/// Number of the 2^n assignment prunings whose automaton is equivalent to A_φ.
std::size_t count_equivalent_prunings(const Automaton& a_phi, const Limits& limits = {});

/// Run of the clause-chasing strategy on u·v^ω; true iff it visits q0 infinitely often.
bool clause_strategy_accepts(const Automaton& a_phi, const LassoWord& w);
/// Random lasso in (R_{n,m})^ω, with R_{n,m} = (X·C)*·{x1·cj·x2·cj···xn·cj}.
LassoWord sample_pattern_word(std::size_t n, std::size_t m, std::uint64_t seed);
/// Replays the clause-chasing strategy on `samples` random words of (R_{n,m})^ω.
bool hd_strategy_audit(const Automaton& a_phi, std::size_t samples = 200, std::uint64_t seed = 1);

// ---------------------------------------------------------------- graphs

struct UGraph {
  std::size_t n = 0;                                   // vertices 1..n
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const;  // 0-based
  bool connected() const;
};

UGraph parse_graph(std::string_view text);
/// Closed walk through every vertex exactly once (for n = 2, the single edge).
bool is_hamiltonian(const UGraph& g);

/// Co-Büchi automaton over letters 1..n with a loop copy L_i and a transit copy
/// T_i (the α states) per vertex. Throws std::invalid_argument when disconnected.
Automaton hamcycle_to_ncw(const UGraph& g);
/// Deterministic co-Büchi automaton for [n]*·⋃ i^ω.
Automaton eventually_constant_dcw(std::size_t n);

// ---------------------------------------------------------------- Turing machines

/// Single-tape machine; states[0] is initial, states[1] accepting, states[2] rejecting.
struct TuringMachine {
  struct Move {
    std::size_t next;   // state index
    std::size_t write;  // symbol index
    bool right;
  };
  std::string name = "T";
  std::vector<std::string> gamma;
  std::size_t blank = 0;
  std::vector<std::string> states;
  std::map<std::pair<std::size_t, std::size_t>, Move> rules;  // (state, symbol)
  std::size_t space = 1;

  void validate() const;  // total rule table, three distinguished states, space ≥ 1
};

TuringMachine parse_tm(std::string_view text);

/// Σ = {$} ∪ Γ ∪ Q×Γ; head letters are spelled `state:symbol`.
Alphabet tm_alphabet(const TuringMachine& t);
/// Expected letter at the same position of the successor configuration.
Letter tm_next(const TuringMachine& t, Letter left, Letter mid, Letter right);

/// Weak automaton accepting words that contain an encoding violation or an
/// accepting configuration. The accepting sink is its only α state.
Automaton tm_to_nww(const TuringMachine& t, const Limits& limits = {});
/// The encoding of the machine's run on the empty tape (eventually periodic).
LassoWord empty_tape_word(const TuringMachine& t);
bool accepts_empty_tape(const TuringMachine& t);

// ---------------------------------------------------------------- mutators

/// Duplicates the first state with an incoming transition together with all
/// transitions into it. Throws std::invalid_argument for an empty language.
Automaton dbp_inflate(const Automaton& a);
/// Adds initial --σ--> a fresh rejecting sink. Throws std::invalid_argument
/// unless some accepted word starts with σ.
Automaton sd_break(const Automaton& a, Letter sigma);

// ---------------------------------------------------------------- corpus

/// A named automaton with the properties it must satisfy. Property tokens:
/// weak, deterministic, sd, hd, dbp, universal, empty, states-universal,
/// measure=<r>, prunings-measure-0, prunings-strongly-connected (each may be
/// prefixed with `!`), accept:<lasso>, reject:<lasso>.
struct CorpusEntry {
  std::string name;
  Automaton automaton;
  std::vector<std::string> manifest;
};

std::vector<CorpusEntry> corpus();
const CorpusEntry& corpus_entry(const std::string& name);
/// Failed manifest properties (empty when all hold).
std::vector<std::string> check_manifest(const CorpusEntry& e, const Limits& limits = {});

}  // namespace nhier
