#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhier/automaton.hpp"
#include "nhier/rational.hpp"

namespace nhier {

/// Σ-labelled Markov decision process.
struct Mdp {
  struct Action {
    std::string name;
    std::vector<std::pair<State, Rational>> dist;  // sorted by target, positive probabilities
  };

  std::string name = "M";
  Alphabet alphabet;
  State initial = 0;
  std::vector<Letter> label;                 // per state
  std::vector<std::vector<Action>> actions;  // per state, non-empty

  std::size_t num_states() const { return label.size(); }
  /// Throws InvalidAutomaton when a distribution does not sum to 1 or a state lacks actions.
  void validate() const;
};

Mdp parse_mdp(std::string_view text);
Mdp load_mdp(const std::string& path);
std::string serialize_mdp(const Mdp& m);

/// One state per letter, single action `*`, uniform successor distribution;
/// the generated word is uniformly random.
Mdp uniform_mdp(const Alphabet& alphabet);

/// M × A: state 0 is ⟨s₀, ⊥⟩; actions from ⟨s, q⟩ are pairs (a, q') with
/// q' ∈ δ(q, τ(s)). Reachable part only.
struct ProductMdp {
  struct Action {
    std::size_t base;  // index into the MDP state's actions
    State next_q;
    std::vector<std::pair<std::size_t, Rational>> dist;
  };
  struct Node {
    State s;
    std::optional<State> q;  // nullopt = ⊥
  };

  Automaton automaton;
  std::vector<Node> nodes;
  std::vector<std::vector<Action>> actions;

  std::size_t size() const { return nodes.size(); }
  bool accepting(std::size_t v) const { return nodes[v].q && automaton.accepting(*nodes[v].q); }
};

ProductMdp product(const Mdp& m, const Automaton& a);

/// Maximal end components of the sub-MDP on `allowed` nodes (all when empty).
std::vector<std::vector<std::size_t>> maximal_end_components(const ProductMdp& p, const std::vector<bool>& allowed = {});

struct MdpValue {
  Rational value;                  // from the initial node
  std::vector<Rational> values;    // per node
  std::vector<std::size_t> policy; // chosen action per node
};

/// Maximal probability of generating an accepting automaton run.
MdpValue max_acceptance_value(const ProductMdp& p);

Rational psyn(const Mdp& m, const Automaton& a);
Rational psem(const Mdp& m, const Automaton& a, const Limits& limits = {});

struct GfmWitness {
  bool equal = false;
  Rational psyn, psem;
};

GfmWitness gfm_witness(const Mdp& m, const Automaton& a, const Limits& limits = {});

}  // namespace nhier
