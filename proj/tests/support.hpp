#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nhier/automaton.hpp"
#include "nhier/mdp.hpp"

namespace nhier::testing {

using Rng = std::mt19937_64;

/// Membership of u·v^ω decided block-wise: boundary states after u·v^i,
/// a relation over whole v-blocks, and a transitive closure. Shares no code
/// with the product-graph oracle.
bool naive_member(const Automaton& a, const LassoWord& w);

/// Random total automaton; for kind weak, α is made homogeneous per SCC.
Automaton random_automaton(Rng& rng, std::size_t n, std::size_t k, Acceptance kind, std::size_t max_succ = 2);
Automaton random_deterministic(Rng& rng, std::size_t n, std::size_t k, Acceptance kind);

/// Adds a copy of a state and lets some of its predecessors branch to the copy.
/// The result is semantically deterministic and DBP whenever the input is.
Automaton duplicate_states(Rng& rng, const Automaton& a, std::size_t copies);

/// Nondeterministic SD Büchi (or weak) automaton with at most `max_states` states:
/// an inflated random deterministic automaton whose runs all project onto its runs.
Automaton random_sd_nbw(Rng& rng, std::size_t max_states, bool weak);
/// Nondeterministic HD co-Büchi automaton: a determinized random NCW with duplications.
Automaton random_hd_ncw(Rng& rng, std::size_t max_states);

Mdp random_mdp(Rng& rng, const Alphabet& alphabet, std::size_t max_states);

}  // namespace nhier::testing
