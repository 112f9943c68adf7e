#include "mcprune/sparsifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mcprune/errors.hpp"
#include "mcprune/features.hpp"
#include "mcprune/rng.hpp"

namespace mcprune {

namespace {

using Clock = std::chrono::steady_clock;

// Thresholds are compared against probabilities, so a stage threshold that
// only exceeds 1 by accumulated rounding of q0 + (s-1) d is treated as 1.
constexpr double kThresholdSlack = 1e-9;

}  // namespace

double PruneConfig::threshold(std::size_t stage) const {
  if (strategy == Strategy::ConstantConfidence || stage <= 1) return q0;
  return q0 + static_cast<double>(stage - 1) * d;
}

void PruneConfig::validate() const {
  if (stages == 0) throw ConfigError("at least one stage is required");
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw ConfigError("q0 must lie in [0, 1]");
  if (strategy == Strategy::IncreasingConfidence && !(d >= 0.0)) {
    throw ConfigError("increment d must be non-negative");
  }
  for (std::size_t s = 1; s <= stages; ++s) {
    if (threshold(s) > 1.0 + kThresholdSlack) {
      throw ConfigError("stage " + std::to_string(s) + " threshold exceeds 1");
    }
  }
}

PruneConfig preset(std::string_view name) {
  if (name == "dense-1stage") return {Strategy::ConstantConfidence, 0.98, 0.0, 1};
  if (name == "sparse-5stage") return {Strategy::ConstantConfidence, 0.95, 0.0, 5};
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

PruneConfig increasing_confidence(double q0, double d, double last) {
  if (!(d > 0.0)) throw ConfigError("increment d must be positive");
  if (last < q0) throw ConfigError("last threshold is below q0");
  const auto steps = static_cast<std::size_t>(std::llround((last - q0) / d));
  PruneConfig cfg{Strategy::IncreasingConfidence, q0, d, steps + 1};
  cfg.validate();
  return cfg;
}

Strategy parse_strategy(std::string_view name) {
  if (name == "CC" || name == "cc") return Strategy::ConstantConfidence;
  if (name == "IC" || name == "ic") return Strategy::IncreasingConfidence;
  throw ConfigError("unknown strategy '" + std::string(name) + "' (expected CC or IC)");
}

const char* strategy_name(Strategy s) {
  return s == Strategy::ConstantConfidence ? "CC" : "IC";
}

std::vector<double> not_in_solution_probabilities(const Graph& g, const LinearModel& model) {
  if (model.kind != FeatureKind::Vertex) throw ArgumentError("pruning needs a vertex model");
  const auto feats = compute_vertex_features(g, model.profile);
  std::vector<double> p0(g.num_vertices());
  for (std::size_t v = 0; v < p0.size(); ++v) p0[v] = predict_p0(model, feats.row(v));
  return p0;
}

namespace {

PruneStep split_by_threshold(const Graph& g, std::span<const double> p0, double q) {
  PruneStep step;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    (p0[v] >= q ? step.removed : keep).push_back(v);
  }
  step.graph = step.removed.empty() ? g : induced_subgraph(g, keep);
  return step;
}

}  // namespace

PruneStep prune_once(const Graph& g, const LinearModel& model, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
  if (g.num_vertices() == 0) return {g, {}};
  const auto p0 = not_in_solution_probabilities(g, model);
  return split_by_threshold(g, p0, q);
}

PruneReport run_strategy(const Graph& g, std::span<const LinearModel> models, const PruneConfig& cfg) {
  cfg.validate();
  if (models.empty() || (models.size() != 1 && models.size() != cfg.stages)) {
    throw ConfigError("expected one model or one model per stage (" + std::to_string(cfg.stages) + ")");
  }
  const auto start = Clock::now();
  PruneReport report;
  report.original_vertices = g.num_vertices();
  report.original_edges = g.num_edges();
  report.final_graph = g;
  report.survivors.resize(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) report.survivors[v] = v;

  std::size_t removed_vertices = 0;
  for (std::size_t s = 1; s <= cfg.stages; ++s) {
    const double q = std::min(cfg.threshold(s), 1.0);
    report.thresholds.push_back(q);
    const auto stage_start = Clock::now();
    StageTiming timing;
    std::vector<Vertex> removed_original;

    const Graph& current = report.final_graph;
    if (current.num_edges() == 0) {
      if (!report.stopped_at_stage) report.stopped_at_stage = s;
    } else {
      const auto& model = models.size() == 1 ? models[0] : models[s - 1];
      if (model.kind != FeatureKind::Vertex) throw ArgumentError("pruning needs a vertex model");
      const auto feature_start = Clock::now();
      const auto feats = compute_vertex_features(current, model.profile);
      timing.features = Clock::now() - feature_start;
      std::vector<double> p0(current.num_vertices());
      for (std::size_t v = 0; v < p0.size(); ++v) p0[v] = predict_p0(model, feats.row(v));
      auto step = split_by_threshold(current, p0, q);

      std::vector<Vertex> survivors;
      std::size_t r = 0;
      for (Vertex v = 0; v < current.num_vertices(); ++v) {
        if (r < step.removed.size() && step.removed[r] == v) {
          removed_original.push_back(report.survivors[v]);
          ++r;
        } else {
          survivors.push_back(report.survivors[v]);
        }
      }
      report.survivors = std::move(survivors);
      report.final_graph = std::move(step.graph);
    }

    removed_vertices += removed_original.size();
    report.stage_removed.push_back(std::move(removed_original));
    const double vr = g.num_vertices() ? static_cast<double>(removed_vertices) / g.num_vertices() : 0.0;
    const double er = g.num_edges()
                          ? static_cast<double>(g.num_edges() - report.final_graph.num_edges()) / g.num_edges()
                          : 0.0;
    report.stage_vertex_ratio.push_back(vr);
    report.stage_edge_ratio.push_back(er);
    timing.total = Clock::now() - stage_start;
    report.timings.push_back(timing);
  }
  report.vertex_ratio = report.stage_vertex_ratio.back();
  report.edge_ratio = report.stage_edge_ratio.back();
  report.total_time = Clock::now() - start;
  return report;
}

FitResult fit_multistage(std::span<const TrainingInstance> corpus, const FitOptions& options) {
  options.config.validate();
  if (corpus.empty()) throw ArgumentError("training corpus is empty");

  struct Working {
    Graph graph;
    std::vector<Vertex> origin;          // current index -> original index
    std::vector<char> positive_original;  // membership in V(M) of the original
  };
  std::vector<Working> work;
  work.reserve(corpus.size());
  for (const auto& inst : corpus) {
    Working w;
    w.graph = inst.graph;
    w.origin.resize(inst.graph.num_vertices());
    for (Vertex v = 0; v < w.origin.size(); ++v) w.origin[v] = v;
    w.positive_original.assign(inst.graph.num_vertices(), 0);
    for (Vertex v : inst.mce.clique_vertices()) w.positive_original[v] = 1;
    work.push_back(std::move(w));
  }

  FitResult result;
  for (std::size_t s = 1; s <= options.config.stages; ++s) {
    std::vector<FeatureMatrix> feats(work.size());
    std::vector<LabeledSet> sets;
    for (std::size_t i = 0; i < work.size(); ++i) {
      auto& w = work[i];
      if (w.graph.num_edges() == 0) continue;
      feats[i] = compute_vertex_features(w.graph, options.profile);
      std::vector<Vertex> positives;
      if (options.resolve_each_stage) {
        positives = enumerate_maximum_cliques(w.graph).clique_vertices();
      } else {
        for (Vertex v = 0; v < w.origin.size(); ++v) {
          if (w.positive_original[w.origin[v]]) positives.push_back(v);
        }
      }
      try {
        sets.push_back(build_training_set(feats[i], positives, derive_seed(options.seed, s, i),
                                          corpus[i].name));
      } catch (const DegenerateInputError&) {
        // An instance whose survivors are all one class contributes nothing.
      }
    }
    if (sets.empty()) throw FitError(s, "no instance has both positive and negative vertices");

    TrainParams params = options.params;
    params.seed = derive_seed(options.params.seed, s, 0x7261696e);
    auto model = train(sets, params, options.profile);
    std::size_t rows = 0;
    for (const auto& set : sets) rows += set.size();
    result.stage_rows.push_back(rows);
    result.stage_instances.push_back(sets.size());

    const double q = std::min(options.config.threshold(s), 1.0);
    for (std::size_t i = 0; i < work.size(); ++i) {
      auto& w = work[i];
      if (w.graph.num_edges() == 0) continue;
      std::vector<double> p0(w.graph.num_vertices());
      for (std::size_t v = 0; v < p0.size(); ++v) p0[v] = predict_p0(model, feats[i].row(v));
      auto step = split_by_threshold(w.graph, p0, q);
      if (step.removed.empty()) continue;
      std::vector<Vertex> origin;
      std::size_t r = 0;
      for (Vertex v = 0; v < w.origin.size(); ++v) {
        if (r < step.removed.size() && step.removed[r] == v) {
          ++r;
        } else {
          origin.push_back(w.origin[v]);
        }
      }
      w.origin = std::move(origin);
      w.graph = std::move(step.graph);
    }
    result.models.push_back(std::move(model));
  }
  return result;
}

}  // namespace mcprune
