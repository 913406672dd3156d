#pragma once

#include <optional>
#include <vector>

#include "nhier/automaton.hpp"

namespace nhier {

/// An accepting run on the ω-word stem·loop^ω. `stem_word`/`loop_word` spell the
/// same ω-word as the lasso the witness was produced for, possibly unrolled.
struct RunWitness {
  std::vector<Letter> stem_word;
  std::vector<Letter> loop_word;
  std::vector<State> stem_states;  // stem_states[i] reads stem_word[i]
  std::vector<State> loop_states;  // loop_states[i] reads loop_word[i]; wraps to loop_states[0]
};

struct MembershipResult {
  bool accepted = false;
  std::optional<RunWitness> witness;
};

/// Decides u·v^ω ∈ L(a) exactly by a cycle search in the product of `a` with the
/// lasso's position graph.
MembershipResult lasso_membership(const Automaton& a, const LassoWord& w);

inline bool accepts(const Automaton& a, const LassoWord& w) { return lasso_membership(a, w).accepted; }

/// Replays a witness through the transition relation and checks it is accepting for `a`
/// and spells `w`.
bool validate_witness(const Automaton& a, const LassoWord& w, const RunWitness& r);

/// All lassos with |u| ≤ max_stem and 1 ≤ |v| ≤ max_loop over the alphabet of size k.
std::vector<LassoWord> enumerate_lassos(std::size_t num_letters, std::size_t max_stem, std::size_t max_loop);

}  // namespace nhier
