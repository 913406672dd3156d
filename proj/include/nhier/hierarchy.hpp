#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nhier/automaton.hpp"

namespace nhier {

/// One successor per (state, letter).
struct Pruning {
  std::vector<std::vector<State>> choice;  // choice[q][letter]

  State operator()(State q, Letter l) const { return choice.at(q).at(l); }
  friend bool operator==(const Pruning&, const Pruning&) = default;
};

bool is_valid_pruning(const Automaton& a, const Pruning& p);
/// Deterministic automaton keeping only the chosen transitions.
Automaton apply_pruning(const Automaton& a, const Pruning& p);
/// Smallest successor everywhere.
Pruning first_pruning(const Automaton& a);
/// `q letter succ` triples of the non-trivial choices, one per line.
std::string format_pruning(const Automaton& a, const Pruning& p);
/// Every pruning of `a`, in canonical order. Throws ResourceLimit past `limits.budget`.
std::vector<Pruning> enumerate_prunings(const Automaton& a, const Limits& limits = {});

struct SdCounterexample {
  State q;
  Letter letter;
  State s;
  State s2;
};

struct SdResult {
  bool sd = false;
  std::optional<SdCounterexample> counterexample;
};

SdResult check_sd(const Automaton& a, const Limits& limits = {});

/// Removes σ-transitions to successors whose language is strictly contained in
/// that of a σ-sibling.
Automaton prune_subsumed(const Automaton& a, const Limits& limits = {});

/// Positional strategy for Eve in the letter game on `arena` × `observer`.
struct HdStrategy {
  Automaton arena;     // the subsumption-pruned automaton the strategy resolves
  Automaton observer;  // deterministic automaton for L(a)
  std::map<std::tuple<State, State, Letter>, State> move;  // (arena state, observer state, letter) -> successor

  /// The strategy's run on a finite prefix (length |w|+1).
  std::vector<State> run(const std::vector<Letter>& word) const;
  /// Whether the strategy's run on u·v^ω is accepting for `arena`.
  bool accepts(const LassoWord& w) const;
};

struct HdResult {
  bool hd = false;
  std::optional<HdStrategy> strategy;
  std::vector<std::string> caveats;
};

HdResult check_hd(const Automaton& a, const Limits& limits = {});

struct DbpResult {
  bool dbp = false;
  std::optional<Pruning> pruning;
  std::size_t explored = 0;  // search nodes visited
};

/// Backtracking search for a pruning equivalent to `a`. Throws ResourceLimit
/// when more than `limits.budget` search nodes are needed.
DbpResult check_dbp(const Automaton& a, const Limits& limits = {});

struct ClassificationReport {
  bool deterministic = false;
  bool weak = false;
  std::optional<bool> sd, hd, dbp;  // nullopt = not decided
  std::optional<SdCounterexample> sd_counterexample;
  std::optional<Pruning> dbp_pruning;
  std::vector<std::string> caveats;
};

ClassificationReport classify(const Automaton& a, const Limits& limits = {});
/// `key value` lines (kv) or a short human-readable block (text).
std::string format_report(const Automaton& a, const ClassificationReport& r, bool kv);

}  // namespace nhier
