#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "mcprune/features.hpp"
#include "mcprune/mce.hpp"

namespace mcprune {

/// Feature rows with 0/1 labels (1 = the vertex lies in some maximum clique).
struct LabeledSet {
  std::size_t width = kVertexFeatureCount;
  std::vector<double> rows;  // row-major
  std::vector<std::uint8_t> labels;
  bool balanced = false;
  std::vector<std::string> sources;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const { return {rows.data() + i * width, width}; }
  std::size_t positives() const;

  void append(std::span<const double> row, std::uint8_t label);
  void append(const LabeledSet& other);
};

/// Labels every vertex by membership in V(M) and under-samples the larger
/// class uniformly at random (seeded) down to the size of the smaller one.
/// Throws DegenerateInputError when either class is empty.
LabeledSet build_training_set(const Graph& g, const MceResult& mce, const FeatureMatrix& feats,
                              std::uint64_t seed, const std::string& source = {});

/// Same, with the positive set given explicitly (ascending or not).
LabeledSet build_training_set(const FeatureMatrix& feats, std::span<const Vertex> positives,
                              std::uint64_t seed, const std::string& source = {});

struct TrainParams {
  std::size_t epochs = 400;
  double l2 = 1e-4;
  double learning_rate = 0.01;  // divided by sqrt(epoch), epochs counted from 1
  std::uint64_t seed = 0;
};

/// Logistic regression P(u = 1) = sigmoid(w . standardize(x) + b).
struct LinearModel {
  FeatureKind kind = FeatureKind::Vertex;
  ProfileSpec profile{};
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<ColumnScaling> scaling;
  TrainParams params{};
  std::string corpus_digest;
  std::size_t training_rows = 0;

  std::size_t width() const noexcept { return weights.size(); }
};

inline constexpr int kModelFormatVersion = 1;

/// Standardizes every column (constant columns keep stdev 1), then runs
/// `epochs` passes of SGD over the L2-regularized log-loss, reshuffling rows
/// each epoch with the seeded generator. Single-threaded; bit-reproducible.
/// Throws ArgumentError on empty/inconsistent input and DataError on
/// non-finite values.
LinearModel train(std::span<const LabeledSet> sets, const TrainParams& params = {},
                  ProfileSpec profile = {}, FeatureKind kind = FeatureKind::Vertex);

double predict_p1(const LinearModel& model, std::span<const double> row);

/// P(u = 0) = 1 - P(u = 1). Throws ArgumentError on width mismatch.
double predict_p0(const LinearModel& model, std::span<const double> row);

/// Mean regularized log-loss of the model on the given sets.
double mean_log_loss(const LinearModel& model, std::span<const LabeledSet> sets);

/// Fraction of rows whose thresholded prediction (p1 >= 0.5) matches the label.
double accuracy(const LinearModel& model, const LabeledSet& set);

struct Coefficient {
  std::string feature;
  double weight = 0.0;
};

/// Features sorted by |weight|, largest first (ties keep column order).
std::vector<Coefficient> coefficient_ranking(const LinearModel& model);

nlohmann::json model_to_json(const LinearModel& model);
/// Throws FormatError on unknown format versions or malformed documents.
LinearModel model_from_json(const nlohmann::json& doc);

void save_model(const std::string& path, const LinearModel& model);
LinearModel load_model(const std::string& path);

/// FNV-1a over the rows and labels; identifies the training corpus.
std::string corpus_digest(std::span<const LabeledSet> sets);

}  // namespace mcprune
