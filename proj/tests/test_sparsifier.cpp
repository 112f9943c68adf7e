#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcprune/errors.hpp"
#include "mcprune/mce.hpp"
#include "mcprune/rng.hpp"
#include "mcprune/sparsifier.hpp"
#include "mcprune/synthgen.hpp"

using namespace mcprune;

namespace {

// P(u=1) = sigmoid(bias): every vertex gets the same probability.
LinearModel constant_model(double bias, ProfileSpec profile = {}) {
  LinearModel m;
  m.weights.assign(kVertexFeatureCount, 0.0);
  m.scaling.assign(kVertexFeatureCount, {});
  m.bias = bias;
  m.profile = profile;
  return m;
}

// P(u=1) grows with degree (F3).
LinearModel degree_model(double slope, double bias) {
  auto m = constant_model(bias);
  m.weights[2] = slope;
  return m;
}

std::vector<TrainingInstance> planted_training(std::size_t count, std::uint64_t seed) {
  std::vector<TrainingInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = generate_planted(64, 0.5, 10, derive_seed(seed, i));
    auto mce = enumerate_maximum_cliques(inst.graph);
    out.push_back({"p" + std::to_string(i), std::move(inst.graph), std::move(mce)});
  }
  return out;
}

const LinearModel& planted_model() {
  static const LinearModel model = [] {
    const auto corpus = build_planted_corpus({64, 0.5, 10, 2000, 23});
    TrainParams p;
    p.seed = 23;
    return train(std::vector<LabeledSet>{corpus.rows}, p, {FeatureProfile::Planted, 0.5});
  }();
  return model;
}

}  // namespace

TEST_CASE("thresholds and presets") {
  PruneConfig ic{Strategy::IncreasingConfidence, 0.55, 0.05, 9};
  CHECK(ic.threshold(1) == 0.55);
  CHECK(ic.threshold(9) == doctest::Approx(0.95));
  const auto auto_ic = increasing_confidence(0.55, 0.05);
  CHECK(auto_ic.stages == 9);
  CHECK(auto_ic.threshold(9) == doctest::Approx(0.95));

  const auto dense = preset("dense-1stage");
  CHECK(dense.q0 == 0.98);
  CHECK(dense.stages == 1);
  const auto sparse = preset("sparse-5stage");
  CHECK(sparse.strategy == Strategy::ConstantConfidence);
  CHECK(sparse.q0 == 0.95);
  CHECK(sparse.stages == 5);
  CHECK(sparse.threshold(5) == 0.95);
  CHECK_THROWS_AS(preset("medium"), ConfigError);

  CHECK_THROWS_AS((PruneConfig{Strategy::IncreasingConfidence, 0.9, 0.1, 3}.validate()), ConfigError);
  CHECK_THROWS_AS((PruneConfig{Strategy::ConstantConfidence, 1.2, 0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((PruneConfig{Strategy::ConstantConfidence, 0.9, 0, 0}.validate()), ConfigError);
  CHECK(parse_strategy("IC") == Strategy::IncreasingConfidence);
  CHECK_THROWS_AS(parse_strategy("XX"), ConfigError);
}

TEST_CASE("prune_once boundary cases") {
  const auto g = gen_gnp(30, 0.3, 2);
  const auto all = prune_once(g, constant_model(-60), 0.5);
  CHECK(all.graph.num_vertices() == 0);
  CHECK(all.removed.size() == 30);

  const auto none = prune_once(g, constant_model(0.3), 1.0);
  CHECK(none.removed.empty());
  CHECK(none.graph == g);

  CHECK(prune_once(Graph{}, constant_model(0), 0.5).removed.empty());
  CHECK_THROWS_AS(prune_once(g, constant_model(0), 1.5), ConfigError);
}

TEST_CASE("removed sets nest as the threshold rises") {
  const auto& m = planted_model();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto inst = generate_planted(64, 0.5, 10, derive_seed(31, i));
    std::vector<Vertex> prev;
    bool first = true;
    for (double q : {0.5, 0.55, 0.65, 0.75, 0.85, 0.95}) {
      const auto r = prune_once(inst.graph, m, q).removed;
      if (!first) CHECK(std::includes(prev.begin(), prev.end(), r.begin(), r.end()));
      prev = r;
      first = false;
    }
  }
}

TEST_CASE("planted pruning ratio at q = 0.55") {
  const auto& m = planted_model();
  double sum = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto inst = generate_planted(64, 0.5, 10, derive_seed(37, i));
    sum += prune_once(inst.graph, m, 0.55).removed.size() / 64.0;
  }
  const double ratio = sum / 50;
  MESSAGE("mean vertex pruning ratio " << ratio);
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.7);
}

TEST_CASE("one stage equals prune_once") {
  const auto g = generate_planted(64, 0.5, 10, 5).graph;
  const auto& m = planted_model();
  const auto report = run_strategy(g, std::vector<LinearModel>{m}, {Strategy::ConstantConfidence, 0.6, 0, 1});
  const auto step = prune_once(g, m, 0.6);
  CHECK(report.stage_removed.front() == step.removed);
  CHECK(report.final_graph == step.graph);
  CHECK(report.vertex_ratio == static_cast<double>(step.removed.size()) / 64.0);
}

TEST_CASE("multi-stage report bookkeeping") {
  const auto g = gen_gnp(80, 0.3, 11);
  const auto m = degree_model(0.5, -12.0);
  const PruneConfig cfg{Strategy::IncreasingConfidence, 0.5, 0.1, 4};
  const auto r = run_strategy(g, std::vector<LinearModel>{m}, cfg);
  REQUIRE(r.thresholds.size() == 4);
  CHECK(r.thresholds[3] == doctest::Approx(0.8));
  std::vector<Vertex> removed;
  for (const auto& s : r.stage_removed) removed.insert(removed.end(), s.begin(), s.end());
  std::sort(removed.begin(), removed.end());
  CHECK(std::adjacent_find(removed.begin(), removed.end()) == removed.end());
  CHECK(removed.size() + r.survivors.size() == 80);
  CHECK(r.final_graph.num_vertices() == r.survivors.size());
  CHECK(std::is_sorted(r.stage_vertex_ratio.begin(), r.stage_vertex_ratio.end()));
  CHECK(std::is_sorted(r.stage_edge_ratio.begin(), r.stage_edge_ratio.end()));
  CHECK(r.vertex_ratio == static_cast<double>(removed.size()) / 80.0);
  CHECK(r.edge_ratio == doctest::Approx(1.0 - static_cast<double>(r.final_graph.num_edges()) / g.num_edges()));
  CHECK(r.final_graph == induced_subgraph(g, r.survivors));

  const auto again = run_strategy(g, std::vector<LinearModel>{m}, cfg);
  CHECK(again.stage_removed == r.stage_removed);

  CHECK_THROWS_AS(run_strategy(g, std::vector<LinearModel>{m, m}, cfg), ConfigError);
  CHECK_THROWS_AS(run_strategy(g, std::vector<LinearModel>{}, cfg), ConfigError);
}

TEST_CASE("stages stop once no edges remain") {
  const auto g = gen_gnp(40, 0.2, 3);
  // Stage 1 removes every vertex.
  const auto r = run_strategy(g, std::vector<LinearModel>{constant_model(-60)},
                              {Strategy::ConstantConfidence, 0.5, 0, 3});
  CHECK(r.final_graph.num_vertices() == 0);
  REQUIRE(r.stopped_at_stage.has_value());
  CHECK(*r.stopped_at_stage == 2);
  CHECK(r.stage_removed[1].empty());
  CHECK(r.vertex_ratio == 1.0);
}

TEST_CASE("multi-stage fitting") {
  const auto corpus = planted_training(50, 41);
  FitOptions opt;
  opt.config = {Strategy::ConstantConfidence, 0.55, 0, 2};
  opt.profile = {FeatureProfile::Planted, 0.5};
  opt.seed = 3;
  const auto fit = fit_multistage(corpus, opt);
  REQUIRE(fit.models.size() == 2);
  CHECK(fit.stage_rows[1] < fit.stage_rows[0]);

  const auto again = fit_multistage(corpus, opt);
  CHECK(again.models[1].weights == fit.models[1].weights);

  opt.resolve_each_stage = true;
  CHECK(fit_multistage(corpus, opt).models.size() == 2);
}

TEST_CASE("one-stage fit equals balanced training on the corpus") {
  const auto corpus = planted_training(10, 43);
  FitOptions opt;
  opt.config = {Strategy::ConstantConfidence, 0.55, 0, 1};
  opt.seed = 8;
  opt.params.seed = 4;
  const auto fit = fit_multistage(corpus, opt);

  std::vector<LabeledSet> sets;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    sets.push_back(build_training_set(inst.graph, inst.mce, compute_vertex_features(inst.graph),
                                      derive_seed(opt.seed, 1, i), inst.name));
  }
  TrainParams params = opt.params;
  params.seed = derive_seed(opt.params.seed, 1, 0x7261696e);
  CHECK(train(sets, params).weights == fit.models[0].weights);
}

TEST_CASE("fitting fails when a stage has no negatives") {
  std::vector<TrainingInstance> corpus;
  for (std::size_t n : {4u, 5u}) {
    auto g = fixtures::complete(n);
    auto mce = enumerate_maximum_cliques(g);
    corpus.push_back({"k" + std::to_string(n), std::move(g), std::move(mce)});
  }
  try {
    fit_multistage(corpus, {});
    FAIL("expected FitError");
  } catch (const FitError& e) {
    CHECK(e.stage() == 1);
  }
}
