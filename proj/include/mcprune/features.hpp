#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcprune/graph.hpp"

namespace mcprune {

enum class FeatureKind { Vertex, Edge };

/// Which variant of the vertex feature set to compute.
///  - RealGraph: expected values for the chi-square features are the
///    empirical mean degree and mean LCC of the graph.
///  - Planted: expected degree is n*p, F8/F9 work on the order-4 LCC
///    against its G(n,p) expectation, and F10 is replaced by the order-4 LCC.
enum class FeatureProfile { RealGraph, Planted };

struct ProfileSpec {
  FeatureProfile profile = FeatureProfile::RealGraph;
  double edge_probability = 0.5;  // only read by the planted profile
};

inline constexpr std::size_t kVertexFeatureCount = 10;
inline constexpr std::size_t kEdgeFeatureCount = 9;
inline constexpr double kExpectedFloor = 1e-9;
inline constexpr std::size_t kPlantedLccOrder = 4;

struct ColumnScaling {
  double mean = 0.0;
  double stdev = 1.0;
  friend bool operator==(const ColumnScaling&, const ColumnScaling&) = default;
};

/// Row-major feature table. Row i describes vertex i (Vertex kind) or
/// `edges[i]` (Edge kind).
struct FeatureMatrix {
  FeatureKind kind = FeatureKind::Vertex;
  FeatureProfile profile = FeatureProfile::RealGraph;
  std::size_t width = kVertexFeatureCount;
  std::vector<double> values;
  std::vector<Edge> edges;
  std::optional<std::vector<ColumnScaling>> scaling;

  std::size_t rows() const noexcept { return width == 0 ? 0 : values.size() / width; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * width, width}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * width, width}; }
  double at(std::size_t i, std::size_t col) const { return values[i * width + col]; }
};

/// Pearson's statistic sum (O_i - E_i)^2 / E_i.
/// Throws ArgumentError on length mismatch or empty input, DomainError when
/// any expected count is not positive.
double chi_square(std::span<const double> observed, std::span<const double> expected);

/// Single-cell form (o - e)^2 / e used by the per-vertex features.
double chi_square_cell(double observed, double expected);

/// Expected order-k LCC of a vertex in G(n, p):
/// C(n-1, k-1) p^C(k,2) / C(ceil(n p), k-1). Returns 0 when the denominator
/// vanishes.
double expected_order_k_lcc(std::size_t n, double p, std::size_t k);

/// F1..F10 for every vertex. `coloring` and `eig` must have been computed on g.
/// Throws DegenerateInputError when the expected degree is 0.
FeatureMatrix vertex_features(const Graph& g, const Coloring& coloring,
                              std::span<const double> eig, ProfileSpec profile = {});

/// Convenience: greedy coloring and eigencentrality computed here. An
/// edgeless graph is rejected with DegenerateInputError.
FeatureMatrix compute_vertex_features(const Graph& g, ProfileSpec profile = {});

/// E1..E9 for every edge of g in `g.edges()` order.
FeatureMatrix edge_features(const Graph& g, const Coloring& coloring,
                            std::span<const double> lcc, std::span<const double> eig);

/// Edges whose common neighbors see fewer than k - 2 colors under `coloring`.
/// Such an edge lies in no clique of size k, so it can be deleted when k is a
/// lower bound on the clique number being sought.
std::vector<Edge> edges_removable_by_color_rule(const Graph& g, const Coloring& coloring,
                                                std::size_t k);

std::vector<std::string> feature_names(FeatureKind kind);

/// CSV with header `id,F1..F10` (vertices, id = label) or `u,v,E1..E9`.
void write_feature_csv(std::ostream& out, const Graph& g, const FeatureMatrix& fm);

namespace serial {

FeatureMatrix vertex_features(const Graph& g, const Coloring& coloring,
                              std::span<const double> eig, ProfileSpec profile = {});
FeatureMatrix edge_features(const Graph& g, const Coloring& coloring,
                            std::span<const double> lcc, std::span<const double> eig);

}  // namespace serial

}  // namespace mcprune
