#pragma once

#include <optional>
#include <vector>

#include "nhier/automaton.hpp"

namespace nhier {

/// Letter-labelled graph with a conjunction of generalized Büchi sets and one
/// co-Büchi ("visit finitely often") set. Used for every emptiness question.
struct LabeledGraph {
  struct Edge {
    std::size_t to;
    Letter letter;
  };
  std::vector<std::vector<Edge>> edges;
  std::size_t initial = 0;
  std::vector<std::vector<bool>> inf_sets;  // each must be visited infinitely often
  std::vector<bool> fin_set;                // must be visited finitely often (empty = none)
};

/// A lasso accepted by the graph's condition, if any.
std::optional<LassoWord> find_accepting_lasso(const LabeledGraph& g);

/// Some lasso in L(a), if the language is non-empty.
std::optional<LassoWord> find_accepted_lasso(const Automaton& a);
bool is_empty(const Automaton& a);

/// The same language as a co-Büchi automaton: cobuchi inputs unchanged, weak
/// structures (any tag) with α complemented. Throws Unsupported otherwise.
Automaton cobuchi_reading(const Automaton& a);

/// Breakpoint (Miyano–Hayashi) determinization of the co-Büchi reading of `a`
/// (kind cobuchi or weak). Deterministic inputs are returned trimmed, unchanged.
Automaton determinize_ncw(const Automaton& a, const Limits& limits = {});

/// Rank-based complementation of a nondeterministic Büchi automaton
/// (level rankings up to 2n, even ranks on α, obligation set).
Automaton rank_complement(const Automaton& a, const Limits& limits = {});

/// L(result) = Σ^ω ∖ L(a).
Automaton complement(const Automaton& a, const Limits& limits = {});

/// A word in L(a) ∖ L(b), if any.
std::optional<LassoWord> find_counterexample(const Automaton& a, const Automaton& b, const Limits& limits = {});

/// Like find_counterexample but never falls back to rank-based complementation;
/// returns std::nullopt ("unknown") when that fallback would be needed.
std::optional<bool> contains_without_ranks(const Automaton& a, const Automaton& b, const Limits& limits = {});

bool contains(const Automaton& a, const Automaton& b, const Limits& limits = {});
bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits = {});
bool state_equiv(const Automaton& a, State q, State s, const Limits& limits = {});
bool is_universal_state(const Automaton& a, State q, const Limits& limits = {});

/// A deterministic automaton for L(a): the trimmed input when deterministic, the
/// breakpoint construction for co-Büchi or weak structures, the α-restricted
/// subset construction for semantically deterministic Büchi automata.
/// Throws Unsupported for any other nondeterministic Büchi automaton.
Automaton deterministic_observer(const Automaton& a, const Limits& limits = {});

/// One-state automaton accepting Σ^ω (or nothing).
Automaton universal_automaton(const Alphabet& alphabet);
Automaton empty_automaton(const Alphabet& alphabet);

/// Dual of a deterministic automaton (buchi <-> cobuchi, weak: α complemented).
Automaton dualize_deterministic(const Automaton& d);

/// Product of two automata over the same alphabet with their conditions conjoined.
LabeledGraph intersection_graph(const Automaton& a, const Automaton& b, const Limits& limits = {});

}  // namespace nhier
