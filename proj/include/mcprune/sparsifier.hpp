#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcprune/classifier.hpp"
#include "mcprune/graph.hpp"
#include "mcprune/mce.hpp"

namespace mcprune {

/// CC keeps the threshold fixed at q0; IC raises it by d after every stage.
enum class Strategy { ConstantConfidence, IncreasingConfidence };

struct PruneConfig {
  Strategy strategy = Strategy::ConstantConfidence;
  double q0 = 0.95;
  double d = 0.05;
  std::size_t stages = 1;

  /// Threshold used at `stage` (1-based).
  double threshold(std::size_t stage) const;

  /// Throws ConfigError for q0 outside [0,1], stages == 0 or any stage
  /// threshold above 1.
  void validate() const;
};

/// Named operating points: "dense-1stage" (CC, q = 0.98, one stage) and
/// "sparse-5stage" (CC, q = 0.95, five stages). Throws ConfigError otherwise.
PruneConfig preset(std::string_view name);

/// IC configuration whose stage count makes the last threshold equal `last`.
PruneConfig increasing_confidence(double q0, double d, double last = 0.95);

Strategy parse_strategy(std::string_view name);
const char* strategy_name(Strategy s);

struct PruneStep {
  Graph graph;                  // induced on the survivors
  std::vector<Vertex> removed;  // indices into the input graph, ascending
};

/// P(u = 0) for every vertex of g under `model` (features computed on g).
std::vector<double> not_in_solution_probabilities(const Graph& g, const LinearModel& model);

/// Removes exactly the vertices with P(u = 0) >= q. An empty graph is
/// returned unchanged; feature errors (e.g. an edgeless graph) propagate.
PruneStep prune_once(const Graph& g, const LinearModel& model, double q);

struct StageTiming {
  Seconds features{};
  Seconds total{};
};

struct PruneReport {
  std::vector<double> thresholds;                 // per stage actually planned
  std::vector<std::vector<Vertex>> stage_removed;  // original indices, ascending
  Graph final_graph;
  std::vector<Vertex> survivors;  // original index of each final_graph vertex
  std::size_t original_vertices = 0;
  std::size_t original_edges = 0;
  double vertex_ratio = 0.0;
  double edge_ratio = 0.0;
  std::vector<double> stage_vertex_ratio;  // cumulative, non-decreasing
  std::vector<double> stage_edge_ratio;
  /// Set when the surviving graph lost all its edges before the last stage;
  /// the remaining stages then remove nothing.
  std::optional<std::size_t> stopped_at_stage;
  std::vector<StageTiming> timings;
  Seconds total_time{};
};

/// Multi-stage sparsification. `models` holds one model per stage, or a
/// single model reused for every stage. Features are recomputed on the
/// surviving subgraph at every stage; ratios are relative to g.
PruneReport run_strategy(const Graph& g, std::span<const LinearModel> models, const PruneConfig& cfg);

struct TrainingInstance {
  std::string name;
  Graph graph;
  MceResult mce;
};

struct FitOptions {
  PruneConfig config{};
  TrainParams params{};
  ProfileSpec profile{};
  /// Label stage s against the maximum cliques of the stage-s subgraph
  /// instead of the original instance's cliques restricted to survivors.
  bool resolve_each_stage = false;
  std::uint64_t seed = 0;
};

struct FitResult {
  std::vector<LinearModel> models;
  std::vector<std::size_t> stage_rows;       // training rows per stage
  std::vector<std::size_t> stage_instances;  // instances that contributed rows
};

/// Trains one model per stage on the balanced union of surviving vertices,
/// pruning every corpus graph with that model before the next stage.
/// Throws FitError when no instance yields a usable training set at a stage.
FitResult fit_multistage(std::span<const TrainingInstance> corpus, const FitOptions& options);

}  // namespace mcprune
