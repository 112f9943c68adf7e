#include "mcprune/althea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mcprune/errors.hpp"

namespace mcprune {

namespace {
using Clock = std::chrono::steady_clock;
}

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DegenerateInputError("degree statistics need at least two vertices");
  DegreeStats s;
  std::uint64_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    total += g.degree(v);
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  s.mean = static_cast<double>(total) / static_cast<double>(n);
  // n * sum (d - mean)^2 = n * sum d^2 - total^2, all in integers.
  std::uint64_t squares = 0;
  for (Vertex v = 0; v < n; ++v) squares += static_cast<std::uint64_t>(g.degree(v)) * g.degree(v);
  const long double scaled = static_cast<long double>(n) * squares -
                             static_cast<long double>(total) * static_cast<long double>(total);
  s.stdev = static_cast<double>(std::sqrt(scaled / (static_cast<long double>(n) * (n - 1))));
  return s;
}

Fraction symbol_mass_exact(std::size_t i) {
  if (i == 0) throw ArgumentError("symbol index starts at 1");
  if (i >= 55000) throw DomainError("symbol index too large for exact mass");
  const auto a = static_cast<std::int64_t>(i);
  return {2 * a + 1, a * a * (a + 1) * (a + 1)};
}

double symbol_mass(std::size_t i) {
  if (i == 0) throw ArgumentError("symbol index starts at 1");
  const double a = static_cast<double>(i);
  return (2.0 * a + 1.0) / (a * a * ((a + 1.0) * (a + 1.0)));
}

SymbolModel categorize(const Graph& g, const DegreeStats& stats) {
  SymbolModel sym;
  const std::size_t n = g.num_vertices();
  sym.category.assign(n, 1);
  if (stats.stdev > 0.0) {
    const double span = (static_cast<double>(stats.max_degree) - stats.mean) / stats.stdev;
    sym.tau = static_cast<std::size_t>(std::ceil(span)) + 1;
    for (Vertex v = 0; v < n; ++v) {
      const double x = (static_cast<double>(g.degree(v)) - stats.mean) / stats.stdev + 1.0;
      const double i = std::floor(x);
      if (i <= 1.0) continue;
      sym.category[v] = static_cast<std::uint32_t>(std::min(i, static_cast<double>(sym.tau)));
    }
  }
  sym.probs.resize(sym.tau);
  for (std::size_t i = 1; i <= sym.tau; ++i) sym.probs[i - 1] = symbol_mass(i);
  return sym;
}

std::vector<double> significance(const Graph& g, const SymbolModel& sym) {
  const std::size_t n = g.num_vertices();
  std::vector<double> score(n, 0.0);
  double mass = 0.0;
  for (double p : sym.probs) mass += p;

  // Zero-observation cells contribute exactly E, so only observed symbols
  // need the full term: sum_obs [(O-E)^2/E - E] + |N[v]| * sum(probs).
#pragma omp parallel
  {
    std::vector<std::uint32_t> counts(sym.tau + 1, 0);
    std::vector<std::uint32_t> seen;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(n); ++vi) {
      const auto v = static_cast<Vertex>(vi);
      seen.clear();
      auto observe = [&](Vertex u) {
        const auto c = sym.category[u];
        if (counts[c]++ == 0) seen.push_back(c);
      };
      observe(v);
      for (Vertex u : g.neighbors(v)) observe(u);
      std::sort(seen.begin(), seen.end());
      const double size = static_cast<double>(g.degree(v) + 1);
      double s = 0.0;
      for (auto c : seen) {
        const double e = sym.probs[c - 1] * size;
        const double diff = counts[c] - e;
        s += diff * diff / e - e;
        counts[c] = 0;
      }
      score[v] = s + size * mass;
    }
  }
  return score;
}

namespace serial {

std::vector<double> significance(const Graph& g, const SymbolModel& sym) {
  const std::size_t n = g.num_vertices();
  std::vector<double> score(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<double> observed(sym.tau, 0.0);
    observed[sym.category[v] - 1] += 1.0;
    for (Vertex u : g.neighbors(v)) observed[sym.category[u] - 1] += 1.0;
    const double size = static_cast<double>(g.degree(v) + 1);
    double s = 0.0;
    for (std::size_t i = 0; i < sym.tau; ++i) {
      const double e = sym.probs[i] * size;
      s += (observed[i] - e) * (observed[i] - e) / e;
    }
    score[v] = s;
  }
  return score;
}

}  // namespace serial

CliqueSolver exact_clique_solver(std::optional<Seconds> time_limit) {
  return [time_limit](const Graph& g) {
    auto result = enumerate_maximum_cliques(g, time_limit);
    return std::move(result.cliques.front());
  };
}

AltheaResult althea_run(const Graph& g, const CliqueSolver& solver) {
  const auto start = Clock::now();
  const auto stats = degree_stats(g);
  const auto sym = categorize(g, stats);
  const auto score = significance(g, sym);

  AltheaResult out;
  out.candidate_score = -std::numeric_limits<double>::infinity();
  for (Vertex v = 0; v < score.size(); ++v) {
    if (score[v] > out.candidate_score) {
      out.candidate_score = score[v];
      out.candidate = v;
    }
  }
  std::vector<Vertex> region(g.neighbors(out.candidate).begin(), g.neighbors(out.candidate).end());
  region.insert(std::lower_bound(region.begin(), region.end(), out.candidate), out.candidate);
  const Graph sub = induced_subgraph(g, region);
  out.scoring_time = Clock::now() - start;

  const auto solve_start = Clock::now();
  auto local = solver(sub);
  out.solve_time = Clock::now() - solve_start;

  for (Vertex u : local) {
    if (u >= region.size()) throw ArgumentError("clique solver returned an unknown vertex");
    out.clique.push_back(region[u]);
  }
  std::sort(out.clique.begin(), out.clique.end());
  if (!is_clique(g, out.clique)) throw ArgumentError("clique solver returned a non-clique");

  out.region_vertices = sub.num_vertices();
  out.region_edges = sub.num_edges();
  out.vertex_prune_ratio = 1.0 - static_cast<double>(sub.num_vertices()) / g.num_vertices();
  out.edge_prune_ratio =
      g.num_edges() ? 1.0 - static_cast<double>(sub.num_edges()) / g.num_edges() : 0.0;
  return out;
}

}  // namespace mcprune
