#pragma once

#include <cstddef>
#include <vector>

namespace nhier {

/// Max-parity game: player 0 (Eve) wins a play iff the largest priority seen
/// infinitely often is even. Every vertex needs at least one successor.
struct ParityGame {
  std::vector<int> owner;  // 0 = Eve, 1 = Adam
  std::vector<unsigned> priority;
  std::vector<std::vector<std::size_t>> succ;

  std::size_t size() const { return owner.size(); }
  std::size_t add_vertex(int who, unsigned prio) {
    owner.push_back(who);
    priority.push_back(prio);
    succ.emplace_back();
    return owner.size() - 1;
  }
};

struct ParitySolution {
  std::vector<bool> eve_wins;         // per vertex
  std::vector<std::size_t> strategy;  // chosen successor, meaningful on the owner's winning vertices
};

/// Zielonka's recursive algorithm.
ParitySolution solve_parity(const ParityGame& g);

}  // namespace nhier
