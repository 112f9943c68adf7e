#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcprune {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph with strictly ascending adjacency lists.
///
/// Vertices are 0..n-1. When the graph came from a file whose ids were not
/// contiguous (or is an induced subgraph), `labels()` maps each vertex back to
/// its external id; otherwise the label of v is v itself.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on n vertices. Self-loops are dropped and duplicate or
  /// reversed edges merged. Throws ArgumentError for endpoints >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::uint64_t> labels = {});

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::uint64_t>& labels() const noexcept { return labels_; }
  std::uint64_t label(Vertex v) const { return labels_.empty() ? v : labels_[v]; }

  /// Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> labels_;
  std::size_t num_edges_ = 0;
};

/// Proper vertex coloring with colors 1..num_colors.
struct Coloring {
  std::vector<std::uint32_t> colors;
  std::uint32_t num_colors = 0;
};

enum class GraphFormat { EdgeList, Dimacs };

GraphFormat parse_graph_format(std::string_view name);

/// Edge-list: two whitespace-separated non-negative ids per line; lines
/// starting with '%' or '#' are comments. External ids are remapped to
/// 0..n-1 in ascending order and kept as labels.
/// DIMACS: `c` comments, one `p edge n m` header, `e u v` lines (1-based).
Graph load_graph(std::istream& in, GraphFormat format);
Graph load_graph_file(const std::string& path, GraphFormat format);

/// Edge-list output writes labels; DIMACS output writes 1-based indices.
void write_graph(std::ostream& out, const Graph& g, GraphFormat format);
void write_graph_file(const std::string& path, const Graph& g, GraphFormat format);

/// Subgraph induced on `keep` (any order, duplicates ignored). Vertices are
/// re-indexed in ascending order of their old index; labels carry over.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

/// Maximal induced subgraph with minimum degree >= k.
Graph k_core_prune(const Graph& g, std::size_t k);

/// Vertices that survive k-core peeling, ascending.
std::vector<Vertex> k_core_vertices(const Graph& g, std::size_t k);

/// Core number of each vertex and the peeling (degeneracy) order.
struct CoreDecomposition {
  std::vector<std::uint32_t> core;
  std::vector<Vertex> order;
};
CoreDecomposition core_decomposition(const Graph& g);

/// Greedy coloring: vertices visited in ascending id, each given the smallest
/// color not used by an already colored neighbor.
Coloring greedy_coloring(const Graph& g);

/// Same rule, visiting vertices in the given order (a permutation of V).
Coloring greedy_coloring(const Graph& g, std::span<const Vertex> order);

}  // namespace mcprune
