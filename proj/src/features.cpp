#include "mcprune/features.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iterator>
#include <numeric>
#include <ostream>

#include "mcprune/errors.hpp"
#include "mcprune/kernels.hpp"

namespace mcprune {

double chi_square(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw ArgumentError("observed/expected length mismatch");
  if (observed.empty()) throw ArgumentError("chi-square needs at least one cell");
  double total = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw DomainError("expected count must be positive");
    const double d = observed[i] - expected[i];
    total += d * d / expected[i];
  }
  return total;
}

double chi_square_cell(double observed, double expected) {
  const double d = observed - expected;
  return d * d / expected;
}

double expected_order_k_lcc(std::size_t n, double p, std::size_t k) {
  if (k < 2 || n == 0) return 0.0;
  const auto expected_degree = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * p));
  const double denom = binomial(expected_degree, k - 1);
  if (denom == 0.0) return 0.0;
  const double pairs = static_cast<double>(k * (k - 1) / 2);
  return binomial(n - 1, k - 1) * std::pow(p, pairs) / denom;
}

namespace {

double mean_over(std::span<const double> values, std::span<const Vertex> over) {
  if (over.empty()) return 0.0;
  double s = 0.0;
  for (Vertex u : over) s += values[u];
  return s / static_cast<double>(over.size());
}

std::size_t distinct_colors(const Coloring& c, std::span<const Vertex> vertices) {
  std::vector<std::uint32_t> seen;
  seen.reserve(vertices.size());
  for (Vertex u : vertices) seen.push_back(c.colors[u]);
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

void check_inputs(const Graph& g, const Coloring& coloring, std::size_t per_vertex_len) {
  if (coloring.colors.size() != g.num_vertices() || per_vertex_len != g.num_vertices()) {
    throw ArgumentError("per-vertex inputs do not match the graph");
  }
}

// `lcc` and `order4` are precomputed so that the serial and parallel entry
// points can feed in their own kernel results; order4 is empty for RealGraph.
template <bool Parallel>
FeatureMatrix build_vertex_rows(const Graph& g, const Coloring& coloring, std::span<const double> eig,
                                ProfileSpec profile, const std::vector<double>& lcc,
                                const std::vector<double>& order4) {
  const std::size_t n = g.num_vertices();
  const bool planted = profile.profile == FeatureProfile::Planted;

  double expected_degree = 0.0;
  double expected_stat = 0.0;
  const std::vector<double>& stat = planted ? order4 : lcc;
  if (planted) {
    expected_degree = static_cast<double>(n) * profile.edge_probability;
    expected_stat = expected_order_k_lcc(n, profile.edge_probability, kPlantedLccOrder);
  } else {
    expected_degree = n == 0 ? 0.0 : 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n);
    expected_stat = n == 0 ? 0.0 : std::accumulate(lcc.begin(), lcc.end(), 0.0) / static_cast<double>(n);
  }
  if (!(expected_degree > 0.0)) {
    throw DegenerateInputError("expected degree is zero; vertex features are undefined");
  }
  expected_stat = std::max(expected_stat, kExpectedFloor);

  std::vector<double> f6(n), f8(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto v = static_cast<Vertex>(i);
    f6[i] = chi_square_cell(static_cast<double>(g.degree(v)), expected_degree);
    f8[i] = chi_square_cell(stat[i], expected_stat);
  }

  FeatureMatrix fm;
  fm.kind = FeatureKind::Vertex;
  fm.profile = profile.profile;
  fm.width = kVertexFeatureCount;
  fm.values.assign(n * kVertexFeatureCount, 0.0);
  const double num_colors = coloring.num_colors == 0 ? 1.0 : static_cast<double>(coloring.num_colors);
#pragma omp parallel for schedule(dynamic, 64) if (Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto v = static_cast<Vertex>(i);
    auto nv = g.neighbors(v);
    auto row = fm.row(static_cast<std::size_t>(i));
    row[0] = static_cast<double>(n);
    row[1] = static_cast<double>(g.num_edges());
    row[2] = static_cast<double>(nv.size());
    row[3] = lcc[i];
    row[4] = eig[i];
    row[5] = f6[i];
    row[6] = mean_over(f6, nv);
    row[7] = f8[i];
    row[8] = mean_over(f8, nv);
    row[9] = planted ? order4[i] : static_cast<double>(distinct_colors(coloring, nv)) / num_colors;
  }
  return fm;
}

template <bool Parallel>
FeatureMatrix build_edge_rows(const Graph& g, const Coloring& coloring, std::span<const double> lcc,
                              std::span<const double> eig) {
  check_inputs(g, coloring, lcc.size());
  if (eig.size() != g.num_vertices()) throw ArgumentError("per-vertex inputs do not match the graph");
  FeatureMatrix fm;
  fm.kind = FeatureKind::Edge;
  fm.width = kEdgeFeatureCount;
  fm.edges = g.edges();
  fm.values.assign(fm.edges.size() * kEdgeFeatureCount, 0.0);
  const double num_colors = coloring.num_colors == 0 ? 1.0 : static_cast<double>(coloring.num_colors);
  const auto m = static_cast<std::ptrdiff_t>(fm.edges.size());
#pragma omp parallel for schedule(dynamic, 256) if (Parallel)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    auto [u, v] = fm.edges[i];
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::vector<Vertex> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    const double c = static_cast<double>(common.size());
    const double du = static_cast<double>(nu.size());
    const double dv = static_cast<double>(nv.size());
    double inv_log = 0.0;
    for (Vertex x : common) {
      // x is adjacent to both u and v, so deg(x) >= 2 and log(deg x) > 0.
      assert(g.degree(x) >= 2);
      inv_log += 1.0 / std::log(static_cast<double>(g.degree(x)));
    }
    auto row = fm.row(static_cast<std::size_t>(i));
    row[0] = c / (du + dv - c);
    row[1] = 2.0 * c / (du + dv);
    row[2] = inv_log;
    row[3] = c / std::sqrt(du * dv);
    row[4] = (lcc[u] + lcc[v]) / 2.0;
    row[5] = (du + dv) / 2.0;
    row[6] = (eig[u] + eig[v]) / 2.0;
    row[7] = c;
    row[8] = static_cast<double>(distinct_colors(coloring, common)) / num_colors;
  }
  return fm;
}

}  // namespace

FeatureMatrix vertex_features(const Graph& g, const Coloring& coloring, std::span<const double> eig,
                              ProfileSpec profile) {
  check_inputs(g, coloring, eig.size());
  auto lcc = local_clustering(g);
  std::vector<double> order4;
  if (profile.profile == FeatureProfile::Planted) order4 = order_k_lcc_all(g, kPlantedLccOrder);
  return build_vertex_rows<true>(g, coloring, eig, profile, lcc, order4);
}

FeatureMatrix compute_vertex_features(const Graph& g, ProfileSpec profile) {
  auto coloring = greedy_coloring(g);
  auto eig = eigencentrality(g);
  return vertex_features(g, coloring, eig.scores, profile);
}

FeatureMatrix edge_features(const Graph& g, const Coloring& coloring, std::span<const double> lcc,
                            std::span<const double> eig) {
  return build_edge_rows<true>(g, coloring, lcc, eig);
}

std::vector<Edge> edges_removable_by_color_rule(const Graph& g, const Coloring& coloring, std::size_t k) {
  check_inputs(g, coloring, g.num_vertices());
  std::vector<Edge> out;
  std::vector<Vertex> common;
  for (auto [u, v] : g.edges()) {
    common.clear();
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    if (distinct_colors(coloring, common) + 2 < k) out.emplace_back(u, v);
  }
  return out;
}

std::vector<std::string> feature_names(FeatureKind kind) {
  std::vector<std::string> names;
  const std::size_t count = kind == FeatureKind::Vertex ? kVertexFeatureCount : kEdgeFeatureCount;
  const char prefix = kind == FeatureKind::Vertex ? 'F' : 'E';
  for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

void write_feature_csv(std::ostream& out, const Graph& g, const FeatureMatrix& fm) {
  const auto names = feature_names(fm.kind);
  out << (fm.kind == FeatureKind::Vertex ? "id" : "u,v");
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  const auto precision = out.precision(17);
  for (std::size_t i = 0; i < fm.rows(); ++i) {
    if (fm.kind == FeatureKind::Vertex) {
      out << g.label(static_cast<Vertex>(i));
    } else {
      out << g.label(fm.edges[i].first) << ',' << g.label(fm.edges[i].second);
    }
    for (double x : fm.row(i)) out << ',' << x;
    out << '\n';
  }
  out.precision(precision);
}

namespace serial {

FeatureMatrix vertex_features(const Graph& g, const Coloring& coloring, std::span<const double> eig,
                              ProfileSpec profile) {
  check_inputs(g, coloring, eig.size());
  auto lcc = serial::local_clustering(g);
  std::vector<double> order4;
  if (profile.profile == FeatureProfile::Planted) order4 = serial::order_k_lcc_all(g, kPlantedLccOrder);
  return build_vertex_rows<false>(g, coloring, eig, profile, lcc, order4);
}

FeatureMatrix edge_features(const Graph& g, const Coloring& coloring, std::span<const double> lcc,
                            std::span<const double> eig) {
  return build_edge_rows<false>(g, coloring, lcc, eig);
}

}  // namespace serial

}  // namespace mcprune
