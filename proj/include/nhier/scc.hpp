#pragma once

#include <cstddef>
#include <vector>

#include "nhier/automaton.hpp"

namespace nhier {

using Graph = std::vector<std::vector<std::size_t>>;

/// Tarjan's algorithm (iterative). Returns the component index of every vertex;
/// components are numbered in reverse topological order (sinks first).
/// Vertices with `active[v] == false` are ignored and get component npos.
struct SccResult {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> component;
  std::size_t count = 0;
};
SccResult tarjan_scc(const Graph& g, const std::vector<bool>* active = nullptr);

/// Vertices reachable from `roots` (restricted to active vertices when given).
std::vector<bool> reachable_from(const Graph& g, const std::vector<std::size_t>& roots,
                                 const std::vector<bool>* active = nullptr);

/// The state graph G_A (letters forgotten).
Graph state_graph(const Automaton& a);

struct SccGraph {
  std::vector<StateSet> components;          // reachable states only
  std::vector<std::vector<std::size_t>> edges;  // DAG successors per component
  std::vector<bool> ergodic;
  std::vector<bool> alpha_free;
  std::vector<bool> trivial;  // single state without self-loop
  std::vector<std::size_t> component_of;  // per state; npos when unreachable
};

SccGraph scc_decomposition(const Automaton& a);

/// True iff every SCC (of the whole state graph) lies inside α or outside it.
bool is_weak(const Automaton& a);

}  // namespace nhier
