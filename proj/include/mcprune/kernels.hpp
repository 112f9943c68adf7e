#pragma once

#include <cstddef>
#include <vector>

#include "mcprune/graph.hpp"

// Per-vertex graph kernels. The functions in namespace mcprune are the
// OpenMP-parallel versions; mcprune::serial holds straightforward reference
// implementations that the tests compare against and the benchmarks time.
// Both produce bit-identical output for any thread count.

namespace mcprune {

struct EigenResult {
  std::vector<double> scores;  // max entry 1, or all zero for isolated vertices
  double eigenvalue = 0.0;     // Rayleigh quotient estimate
  double residual = 0.0;       // ||A v - lambda v||_inf at the returned v
  std::size_t iterations = 0;
  bool converged = false;
};

inline constexpr double kEigenTolerance = 1e-10;
inline constexpr std::size_t kEigenMaxIterations = 10000;

/// Standard local clustering coefficient: edges among N(v) / C(deg v, 2),
/// 0 when deg v < 2.
std::vector<double> local_clustering(const Graph& g);

/// Number of edges among the neighbors of each vertex (triangles through v).
std::vector<std::size_t> neighborhood_edge_counts(const Graph& g);

/// Dominant eigenvector of the adjacency matrix by power iteration on A + I
/// from the uniform vector, normalized to max entry 1. The shift keeps the
/// iteration from oscillating on bipartite graphs without changing the
/// eigenvectors. Throws DegenerateInputError when g has no edges.
EigenResult eigencentrality(const Graph& g, double tol = kEigenTolerance,
                            std::size_t max_iters = kEigenMaxIterations);

/// Fraction of (k-1)-subsets of N(v) that form a clique, i.e. that close a
/// K_k with v. k = 3 is the ordinary LCC. Returns 0 when deg v < k - 1.
double order_k_lcc(const Graph& g, Vertex v, std::size_t k);
std::vector<double> order_k_lcc_all(const Graph& g, std::size_t k);

namespace serial {

std::vector<double> local_clustering(const Graph& g);
EigenResult eigencentrality(const Graph& g, double tol = kEigenTolerance,
                            std::size_t max_iters = kEigenMaxIterations);
std::vector<double> order_k_lcc_all(const Graph& g, std::size_t k);

}  // namespace serial

/// C(n, r) as a double (exact while it fits in 53 bits).
double binomial(std::size_t n, std::size_t r);

}  // namespace mcprune
