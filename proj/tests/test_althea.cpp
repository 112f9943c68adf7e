#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcprune/althea.hpp"
#include "mcprune/errors.hpp"
#include "mcprune/synthgen.hpp"
#include "oracles.hpp"

using namespace mcprune;
using doctest::Approx;
using oracle::Rational;

TEST_CASE("degree statistics") {
  const auto b = degree_stats(fixtures::bridge());
  CHECK(b.max_degree == 3);
  CHECK(b.mean == Approx(7.0 / 3.0));
  CHECK(b.stdev == Approx(std::sqrt(4.0 / 15.0)));

  const auto k4 = degree_stats(fixtures::complete(4));
  CHECK(k4.max_degree == 3);
  CHECK(k4.mean == 3.0);
  CHECK(k4.stdev == 0.0);

  // degrees 4,1,1,1,1: mean 8/5, squared deviations 144/25 + 4 * 9/25 = 180/25
  const auto s = degree_stats(fixtures::star(4));
  CHECK(s.max_degree == 4);
  CHECK(s.mean == Approx(1.6));
  CHECK(s.stdev == Approx(std::sqrt(180.0 / 25.0 / 4.0)));

  CHECK_THROWS_AS(degree_stats(Graph::from_edges(1, {})), DegenerateInputError);
}

TEST_CASE("symbol masses") {
  CHECK(symbol_mass_exact(1) == Fraction{3, 4});
  CHECK(symbol_mass_exact(2) == Fraction{5, 36});
  CHECK(symbol_mass(1) == 0.75);
  CHECK_THROWS_AS(symbol_mass_exact(0), ArgumentError);
  Rational sum = 0;
  for (std::size_t i = 1; i <= 500; ++i) {
    const auto m = symbol_mass_exact(i);
    const Rational r(m.num, m.den);
    CHECK(numerator(r) == m.num);  // already reduced
    if (i > 1) CHECK(symbol_mass(i) < symbol_mass(i - 1));
    CHECK(symbol_mass(i) == static_cast<double>(r));
    sum += r;
    CHECK(sum == 1 - Rational(1, static_cast<long long>((i + 1) * (i + 1))));
  }
}

TEST_CASE("categorization") {
  const auto g = fixtures::bridge();
  const auto sym = categorize(g, degree_stats(g));
  CHECK(sym.tau == 3);
  CHECK(sym.category == std::vector<std::uint32_t>{2, 1, 1, 2, 1, 1});
  REQUIRE(sym.probs.size() == 3);
  CHECK(sym.probs[1] == 5.0 / 36.0);

  const auto k4 = fixtures::complete(4);
  const auto flat = categorize(k4, degree_stats(k4));
  CHECK(flat.tau == 1);
  CHECK(flat.category == std::vector<std::uint32_t>(4, 1));
  CHECK(flat.probs == std::vector<double>{0.75});

  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto h = gen_gnp(50, 0.3, i);
    const auto st = degree_stats(h);
    const auto sm = categorize(h, st);
    for (Vertex v = 0; v < 50; ++v) {
      REQUIRE(sm.category[v] >= 1);
      REQUIRE(sm.category[v] <= sm.tau);
      const double x = (h.degree(v) - st.mean) / st.stdev + 1;
      if (x >= 1 && x < static_cast<double>(sm.tau)) CHECK(sm.category[v] == static_cast<std::uint32_t>(std::floor(x)));
    }
  }
}

TEST_CASE("significance values") {
  const auto k4 = fixtures::complete(4);
  const auto s4 = significance(k4, categorize(k4, degree_stats(k4)));
  for (double x : s4) CHECK(x == Approx(1.0 / 3.0));

  // a: N[a] = {a,b,c,x}, O = (2,2,0), E = 4 (3/4, 5/36, 7/144)
  const auto g = fixtures::bridge();
  const auto sb = significance(g, categorize(g, degree_stats(g)));
  const Rational e1(3), e2(5, 9), e3(7, 36);
  const Rational want = (2 - e1) * (2 - e1) / e1 + (2 - e2) * (2 - e2) / e2 + e3;
  CHECK(want == Rational(771, 180));
  CHECK(sb[0] == Approx(static_cast<double>(want)));
}

TEST_CASE("parallel significance agrees with the direct loop") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto g = gen_gnp(90, 0.1 + 0.08 * static_cast<double>(i), 60 + i);
    const auto sym = categorize(g, degree_stats(g));
    const auto a = significance(g, sym);
    const auto b = serial::significance(g, sym);
    for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(a[v] == Approx(b[v]).epsilon(1e-12));
  }
}

TEST_CASE("significance is isomorphism-invariant") {
  const auto g = gen_gnp(40, 0.4, 12);
  std::vector<Vertex> perm;
  const auto h = fixtures::permuted(g, 3, &perm);
  const auto a = significance(g, categorize(g, degree_stats(g)));
  const auto b = significance(h, categorize(h, degree_stats(h)));
  for (Vertex v = 0; v < 40; ++v) CHECK(a[v] == Approx(b[perm[v]]).epsilon(1e-12));
}

TEST_CASE("althea on K5 with a tail finds K5") {
  const auto g = fixtures::k5_with_tail(10);
  const auto r = althea_run(g);
  CHECK(r.candidate < 5);
  CHECK(r.clique == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(r.vertex_prune_ratio > 0.5);
}

TEST_CASE("althea on complete graphs") {
  const auto g = fixtures::complete(7);
  const auto r = althea_run(g);
  CHECK(r.candidate == 0);
  CHECK(r.clique.size() == 7);
  CHECK(r.vertex_prune_ratio == 0.0);
  CHECK(r.edge_prune_ratio == 0.0);
}

TEST_CASE("althea output is a clique inside the candidate's neighborhood") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto g = gen_gnp(50, 0.6, 80 + i);
    const auto r = althea_run(g);
    CHECK(is_clique(g, r.clique));
    for (Vertex v : r.clique) CHECK((v == r.candidate || g.has_edge(v, r.candidate)));
    CHECK(r.clique.size() <= enumerate_maximum_cliques(g).omega);
    CHECK(r.region_vertices == g.degree(r.candidate) + 1);
    const auto again = althea_run(g);
    CHECK(again.candidate == r.candidate);
    CHECK(again.clique == r.clique);
  }
}

TEST_CASE("solver hook") {
  const auto g = gen_gnp(40, 0.5, 7);
  const CliqueSolver first_vertex = [](const Graph& sub) { return std::vector<Vertex>{0}; };
  CHECK(althea_run(g, first_vertex).clique.size() == 1);
  const CliqueSolver broken = [](const Graph& sub) { return std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7}; };
  CHECK_THROWS_AS(althea_run(g, broken), ArgumentError);
  CHECK_THROWS_AS(althea_run(gen_gnp(200, 0.9, 1), exact_clique_solver(Seconds(0))), TimeoutError);
}
