#include "mcprune/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

#include "mcprune/errors.hpp"

namespace mcprune {

double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (std::size_t i = 1; i <= r; ++i) {
    out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  }
  return std::round(out);
}

namespace {

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::size_t edges_among_neighbors(const Graph& g, Vertex v) {
  std::size_t twice = 0;
  auto nv = g.neighbors(v);
  for (Vertex u : nv) twice += intersection_size(nv, g.neighbors(u));
  return twice / 2;
}

double lcc_from_count(std::size_t edges, std::size_t deg) {
  if (deg < 2) return 0.0;
  return static_cast<double>(edges) / (static_cast<double>(deg) * (deg - 1) / 2.0);
}

// Number of r-cliques inside `cands` (sorted).
std::size_t count_cliques(const Graph& g, std::span<const Vertex> cands, std::size_t r) {
  if (r == 0) return 1;
  if (r == 1) return cands.size();
  std::size_t total = 0;
  std::vector<Vertex> next;
  for (std::size_t i = 0; i + r <= cands.size(); ++i) {
    next.clear();
    auto rest = cands.subspan(i + 1);
    auto nu = g.neighbors(cands[i]);
    std::set_intersection(rest.begin(), rest.end(), nu.begin(), nu.end(),
                          std::back_inserter(next));
    if (next.size() + 1 >= r) total += count_cliques(g, next, r - 1);
  }
  return total;
}

double order_k_ratio(std::size_t cliques, std::size_t deg, std::size_t k) {
  if (deg < k - 1) return 0.0;
  return static_cast<double>(cliques) / binomial(deg, k - 1);
}

void check_order(std::size_t k) {
  if (k < 3) throw ArgumentError("order-k LCC needs k >= 3");
}

// Shared body of the power iteration; `matvec` computes y = A x.
template <typename MatVec>
EigenResult power_iteration(const Graph& g, double tol, std::size_t max_iters, MatVec matvec) {
  if (g.num_edges() == 0) {
    throw DegenerateInputError("eigencentrality is undefined on an edgeless graph");
  }
  const std::size_t n = g.num_vertices();
  std::vector<double> x(n), y(n);
  for (Vertex v = 0; v < n; ++v) x[v] = g.degree(v) > 0 ? 1.0 : 0.0;

  EigenResult res;
  for (std::size_t it = 0;; ++it) {
    matvec(x, y);
    double xy = 0.0, xx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xy += x[i] * y[i];
      xx += x[i] * x[i];
    }
    const double lambda = xy / xx;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - lambda * x[i]));
    res.eigenvalue = lambda;
    res.residual = residual;
    res.iterations = it;
    if (residual <= tol) {
      res.converged = true;
      break;
    }
    if (it == max_iters) break;
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += x[i];
      top = std::max(top, y[i]);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
  }
  res.scores = std::move(x);
  return res;
}

}  // namespace

std::vector<std::size_t> neighborhood_edge_counts(const Graph& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
  std::vector<std::size_t> out(g.num_vertices());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t v = 0; v < n; ++v) out[v] = edges_among_neighbors(g, static_cast<Vertex>(v));
  return out;
}

std::vector<double> local_clustering(const Graph& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
  std::vector<double> out(g.num_vertices());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    const auto vv = static_cast<Vertex>(v);
    out[v] = lcc_from_count(edges_among_neighbors(g, vv), g.degree(vv));
  }
  return out;
}

EigenResult eigencentrality(const Graph& g, double tol, std::size_t max_iters) {
  return power_iteration(g, tol, max_iters, [&g](const std::vector<double>& x, std::vector<double>& y) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (Vertex u : g.neighbors(static_cast<Vertex>(i))) s += x[u];
      y[i] = s;
    }
  });
}

double order_k_lcc(const Graph& g, Vertex v, std::size_t k) {
  check_order(k);
  if (v >= g.num_vertices()) throw ArgumentError("vertex out of range");
  const std::size_t deg = g.degree(v);
  if (deg < k - 1) return 0.0;
  return order_k_ratio(count_cliques(g, g.neighbors(v), k - 1), deg, k);
}

std::vector<double> order_k_lcc_all(const Graph& g, std::size_t k) {
  check_order(k);
  const auto n = static_cast<std::ptrdiff_t>(g.num_vertices());
  std::vector<double> out(g.num_vertices());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    const auto vv = static_cast<Vertex>(v);
    const std::size_t deg = g.degree(vv);
    out[v] = deg < k - 1 ? 0.0 : order_k_ratio(count_cliques(g, g.neighbors(vv), k - 1), deg, k);
  }
  return out;
}

namespace serial {

std::vector<double> local_clustering(const Graph& g) {
  std::vector<double> out(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nv = g.neighbors(v);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < nv.size(); ++i) {
      for (std::size_t j = i + 1; j < nv.size(); ++j) edges += g.has_edge(nv[i], nv[j]) ? 1 : 0;
    }
    out[v] = lcc_from_count(edges, nv.size());
  }
  return out;
}

EigenResult eigencentrality(const Graph& g, double tol, std::size_t max_iters) {
  return power_iteration(g, tol, max_iters, [&g](const std::vector<double>& x, std::vector<double>& y) {
    for (Vertex i = 0; i < x.size(); ++i) {
      double s = 0.0;
      for (Vertex u : g.neighbors(i)) s += x[u];
      y[i] = s;
    }
  });
}

std::vector<double> order_k_lcc_all(const Graph& g, std::size_t k) {
  check_order(k);
  std::vector<double> out(g.num_vertices());
  const std::size_t r = k - 1;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nv = g.neighbors(v);
    if (nv.size() < r) continue;
    // Walk every r-subset of N(v) in lexicographic index order.
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    std::size_t cliques = 0;
    while (true) {
      bool clique = true;
      for (std::size_t a = 0; a < r && clique; ++a) {
        for (std::size_t b = a + 1; b < r && clique; ++b) clique = g.has_edge(nv[idx[a]], nv[idx[b]]);
      }
      cliques += clique ? 1 : 0;
      std::size_t pos = r;
      while (pos > 0 && idx[pos - 1] == nv.size() - r + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < r; ++i) idx[i] = idx[i - 1] + 1;
    }
    out[v] = order_k_ratio(cliques, nv.size(), k);
  }
  return out;
}

}  // namespace serial

}  // namespace mcprune
