#pragma once

#include <numeric>
#include <vector>

#include "mcprune/graph.hpp"
#include "mcprune/rng.hpp"

namespace fixtures {

using mcprune::Edge;
using mcprune::Graph;
using mcprune::Vertex;

// Two triangles {a,b,c}, {x,y,z} joined by {a,x}; a..z = 0..5.
inline Graph bridge() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 4}, {3, 5}, {4, 5}};
  return Graph::from_edges(6, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

// K5 on 0..4 with a path of `tail` extra vertices hanging off vertex 4.
inline Graph k5_with_tail(std::size_t tail) {
  auto e = complete(5).edges();
  for (Vertex v = 5; v < 5 + tail; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(5 + tail, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, e);
}

// Relabels g by a seeded random permutation; perm[old] = new.
inline Graph permuted(const Graph& g, std::uint64_t seed, std::vector<Vertex>* perm_out = nullptr) {
  std::vector<Vertex> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  mcprune::Rng rng(seed);
  rng.shuffle(std::span<Vertex>(perm));
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
  if (perm_out) *perm_out = perm;
  return Graph::from_edges(g.num_vertices(), e);
}

}  // namespace fixtures
