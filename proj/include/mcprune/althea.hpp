#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mcprune/graph.hpp"
#include "mcprune/mce.hpp"

// Statistical clique heuristic: vertices are bucketed by how many standard
// deviations their degree sits above the mean, each vertex's closed
// neighborhood is scored by a chi-square test against Chebyshev masses, and
// an exact (or heuristic) solver runs on the neighborhood of the top vertex.

namespace mcprune {

struct DegreeStats {
  std::size_t max_degree = 0;
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation (divisor |V| - 1)
};

/// Throws DegenerateInputError for graphs with fewer than two vertices.
DegreeStats degree_stats(const Graph& g);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// 1/i^2 - 1/(i+1)^2 = (2i+1) / (i^2 (i+1)^2), already in lowest terms.
/// Exact for i < 55000.
Fraction symbol_mass_exact(std::size_t i);

/// Same value as a double, correctly rounded from the exact fraction.
double symbol_mass(std::size_t i);

struct SymbolModel {
  std::size_t tau = 1;
  std::vector<double> probs;               // probs[i-1] = Pr(symbol i)
  std::vector<std::uint32_t> category;     // per vertex, in 1..tau
};

/// tau = ceil((max - mean) / stdev) + 1; vertex u gets the i with
/// i <= (deg u - mean)/stdev + 1 < i + 1, clamped to [1, tau]. A regular
/// graph (stdev 0) gets a single category.
SymbolModel categorize(const Graph& g, const DegreeStats& stats);

/// Chi-square score of each vertex's closed-neighborhood symbol counts
/// against expected counts Pr(symbol) * |N[v]|, over all tau symbols.
std::vector<double> significance(const Graph& g, const SymbolModel& sym);

namespace serial {
std::vector<double> significance(const Graph& g, const SymbolModel& sym);
}

/// Returns a clique of the graph it is given.
using CliqueSolver = std::function<std::vector<Vertex>(const Graph&)>;

/// Exact solver hook: the lexicographically first maximum clique.
CliqueSolver exact_clique_solver(std::optional<Seconds> time_limit = std::nullopt);

struct AltheaResult {
  Vertex candidate = 0;
  double candidate_score = 0.0;
  std::vector<Vertex> clique;  // indices of g, ascending
  std::size_t region_vertices = 0;
  std::size_t region_edges = 0;
  double vertex_prune_ratio = 0.0;  // share of g outside N[candidate]
  double edge_prune_ratio = 0.0;
  Seconds scoring_time{};
  Seconds solve_time{};
};

/// Picks the lowest-id vertex of maximum significance and runs `solver` on
/// the subgraph induced by its closed neighborhood.
AltheaResult althea_run(const Graph& g, const CliqueSolver& solver = exact_clique_solver());

}  // namespace mcprune
