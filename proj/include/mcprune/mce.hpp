#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcprune/graph.hpp"

namespace mcprune {

using Seconds = std::chrono::duration<double>;

/// All maximum cliques of a graph.
///
/// Each clique is sorted ascending and the list is sorted lexicographically,
/// so two results for the same graph compare equal. The empty graph has
/// omega 0 and exactly one (empty) clique.
struct MceResult {
  std::size_t omega = 0;
  std::vector<std::vector<Vertex>> cliques;
  std::uint64_t nodes_explored = 0;
  Seconds elapsed{};

  /// V(M): every vertex that lies in at least one maximum clique, ascending.
  std::vector<Vertex> clique_vertices() const;
};

/// Exact maximum clique enumeration.
///
/// Vertices are processed in degeneracy order and each one seeds a
/// subproblem on its later neighbors, solved by bitset branch-and-bound with
/// a greedy-coloring bound (branching from the highest color class down).
/// Subtrees are cut only when they cannot reach the current best size, so
/// ties are kept and every maximum clique is reported exactly once.
/// Throws TimeoutError when `time_limit` elapses.
MceResult enumerate_maximum_cliques(const Graph& g, std::optional<Seconds> time_limit = std::nullopt);

/// k-core pruning at k = omega - 1 given the true clique number. Every
/// maximum clique survives. Throws ArgumentError when omega < 1.
Graph omega_oracle_prune(const Graph& g, std::size_t omega);

bool is_clique(const Graph& g, std::span<const Vertex> vertices);

}  // namespace mcprune
