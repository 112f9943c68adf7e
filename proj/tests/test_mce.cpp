#include "doctest.h"
#include "fixtures.hpp"
#include "mcprune/errors.hpp"
#include "mcprune/evaluation.hpp"
#include "mcprune/mce.hpp"
#include "mcprune/synthgen.hpp"
#include "oracles.hpp"

using namespace mcprune;

TEST_CASE("small closed cases") {
  const auto k4 = enumerate_maximum_cliques(fixtures::complete(4));
  CHECK(k4.omega == 4);
  CHECK(k4.cliques.size() == 1);

  const auto b = enumerate_maximum_cliques(fixtures::bridge());
  CHECK(b.omega == 3);
  CHECK(b.cliques == std::vector<std::vector<Vertex>>{{0, 1, 2}, {3, 4, 5}});
  CHECK(b.clique_vertices() == std::vector<Vertex>{0, 1, 2, 3, 4, 5});

  const auto p = enumerate_maximum_cliques(fixtures::petersen());
  CHECK(p.omega == 2);
  CHECK(p.cliques.size() == 15);

  const auto empty = enumerate_maximum_cliques(Graph{});
  CHECK(empty.omega == 0);
  CHECK(empty.cliques == std::vector<std::vector<Vertex>>{{}});

  const auto isolated = enumerate_maximum_cliques(Graph::from_edges(3, {}));
  CHECK(isolated.omega == 1);
  CHECK(isolated.cliques.size() == 3);
}

TEST_CASE("matches subset enumeration") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const std::size_t n = 2 + i % 15;
    const double p = 0.1 + 0.8 * static_cast<double>(i % 9) / 8.0;
    const auto g = gen_gnp(n, p, 900 + i);
    const auto got = enumerate_maximum_cliques(g);
    const auto want = oracle::maximum_cliques(g);
    REQUIRE(got.omega == want.omega);
    REQUIRE(got.cliques == want.all);
  }
}

TEST_CASE("every reported clique verifies") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto inst = generate_planted(60, 0.5, 9, i);
    const auto r = enumerate_maximum_cliques(inst.graph);
    CHECK(r.omega >= 9);
    for (const auto& c : r.cliques) {
      CHECK(c.size() == r.omega);
      CHECK(is_clique(inst.graph, c));
    }
    CHECK(std::is_sorted(r.cliques.begin(), r.cliques.end()));
    CHECK(enumerate_maximum_cliques(inst.graph).cliques == r.cliques);
  }
}

TEST_CASE("time limit") {
  const auto g = gen_gnp(200, 0.9, 1);
  try {
    enumerate_maximum_cliques(g, Seconds(0.0));
    FAIL("expected a timeout");
  } catch (const TimeoutError& e) {
    CHECK(e.best_lower_bound() >= 1);
  }
}

TEST_CASE("omega-oracle pruning") {
  const auto g = fixtures::k5_with_tail(10);
  const auto pruned = omega_oracle_prune(g, 5);
  CHECK(pruned.edges() == fixtures::complete(5).edges());
  CHECK(omega_oracle_prune(fixtures::cycle(5), 2).num_edges() == 5);
  CHECK_THROWS_AS(omega_oracle_prune(g, 0), ArgumentError);
}

TEST_CASE("evaluation rows") {
  MceResult a, b;
  a.omega = 21;
  a.cliques.resize(3);
  b.omega = 20;
  b.cliques.resize(3);
  auto row = evaluate(a, b);
  CHECK_FALSE(row.clique_accuracy);
  CHECK(row.relaxed_accuracy);
  CHECK(row.omega_loss == 1);

  a.omega = b.omega = 16;
  a.cliques.resize(2304);
  b.cliques.resize(37);
  row = evaluate(a, b);
  CHECK_FALSE(row.clique_accuracy);
  CHECK(row.relaxed_accuracy);

  a.cliques.resize(10);
  b.cliques.resize(10);
  CHECK(evaluate(a, b).clique_accuracy);
}
