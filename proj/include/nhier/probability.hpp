#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhier/automaton.hpp"
#include "nhier/hierarchy.hpp"
#include "nhier/rational.hpp"

namespace nhier {

/// Probability that a uniformly random word's run ends in an accepting ergodic
/// SCC, from every state of a deterministic automaton.
std::vector<Rational> state_measures(const Automaton& d);
Rational measure_deterministic(const Automaton& d);

/// P(L(a)) under the uniform letter distribution, via deterministic_observer.
Rational measure(const Automaton& a, const Limits& limits = {});

/// Random picks letters at states, Eve resolves (q, σ); Eve wins a play iff it
/// visits α ∪ Q_rej infinitely often.
struct StochasticBuchiGame {
  Automaton automaton;
  std::vector<bool> q_rej;   // per state: P(L(A^q)) = 0
  std::vector<bool> target;  // α ∪ Q_rej

  std::size_t random_positions() const { return automaton.num_states(); }
  std::size_t eve_positions() const { return automaton.num_states() * automaton.num_letters(); }
};

StochasticBuchiGame build_game(const Automaton& a, const Limits& limits = {});

struct AlmostSureSolution {
  std::vector<bool> random_winning;            // per state
  std::vector<std::vector<bool>> eve_winning;  // per (state, letter)
  Pruning strategy;
};

AlmostSureSolution solve_almost_sure_buchi(const StochasticBuchiGame& g);

struct AlmostDbpResult {
  std::optional<bool> almost_dbp;  // nullopt = search budget exhausted
  std::optional<Pruning> pruning;  // best pruning found
  Rational gap;
  std::string route;  // game, cosafe, exhaustive
};

AlmostDbpResult almost_dbp(const Automaton& a, const Limits& limits = {});

/// Same structure with α' = α ∪ {q : L(A^q) ≠ Σ^ω} (co-Büchi reading).
Automaton cosafe_closure(const Automaton& a, const Limits& limits = {});

Rational measure_gap(const Automaton& a, const Pruning& p, const Limits& limits = {});

/// x·Σ^ω ⊆ L(d) for deterministic d.
bool good_prefix(const Automaton& d, const std::vector<Letter>& x, const Limits& limits = {});

}  // namespace nhier
