#pragma once

#include "nhier/automaton.hpp"

namespace nhier {

/// α-restricted subset construction: δ'(S,σ) = δ(S,σ)∩α when non-empty, else
/// δ(S,σ); S is accepting iff S ⊆ α. Exact for semantically deterministic
/// inputs; for any Büchi input L(result) ⊆ L(a). Output states carry their
/// subset as a name (`{0,2}`). With `require_sd`, non-SD inputs are rejected.
Automaton determinize_sd_nbw(const Automaton& a, bool require_sd = true, const Limits& limits = {});

/// True iff every state label of `d` (as produced above) is a subset that lies
/// inside α of `source` or is disjoint from it.
bool subset_homogeneity_audit(const Automaton& d, const Automaton& source);

/// Reads a `{i,j,...}` label back into a state set.
StateSet parse_state_set(std::string_view label);

}  // namespace nhier
