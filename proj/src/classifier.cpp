#include "mcprune/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>

#include "mcprune/errors.hpp"
#include "mcprune/rng.hpp"

namespace mcprune {

using nlohmann::json;

std::size_t LabeledSet::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

void LabeledSet::append(std::span<const double> row, std::uint8_t label) {
  if (row.size() != width) throw ArgumentError("row width does not match the labeled set");
  rows.insert(rows.end(), row.begin(), row.end());
  labels.push_back(label);
}

void LabeledSet::append(const LabeledSet& other) {
  if (other.size() == 0) return;
  if (size() == 0) width = other.width;
  if (other.width != width) throw ArgumentError("labeled sets have different widths");
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
  sources.insert(sources.end(), other.sources.begin(), other.sources.end());
}

LabeledSet build_training_set(const FeatureMatrix& feats, std::span<const Vertex> positives,
                              std::uint64_t seed, const std::string& source) {
  const std::size_t n = feats.rows();
  std::vector<std::uint8_t> label(n, 0);
  for (Vertex v : positives) {
    if (v >= n) throw ArgumentError("positive vertex out of range");
    label[v] = 1;
  }
  std::vector<std::uint32_t> pos, neg;
  for (std::uint32_t i = 0; i < n; ++i) (label[i] ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) {
    throw DegenerateInputError("training set has an empty class (" + std::to_string(pos.size()) +
                               " positive, " + std::to_string(neg.size()) + " negative)");
  }

  Rng rng(seed);
  auto& larger = pos.size() > neg.size() ? pos : neg;
  const std::size_t keep = std::min(pos.size(), neg.size());
  if (larger.size() > keep) {
    auto picks = rng.sample(static_cast<std::uint32_t>(larger.size()), static_cast<std::uint32_t>(keep));
    std::vector<std::uint32_t> kept;
    kept.reserve(keep);
    for (auto i : picks) kept.push_back(larger[i]);
    larger = std::move(kept);
  }

  std::vector<std::uint32_t> selected;
  selected.reserve(2 * keep);
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(), std::back_inserter(selected));

  LabeledSet out;
  out.width = feats.width;
  out.balanced = true;
  if (!source.empty()) out.sources.push_back(source);
  for (auto i : selected) out.append(feats.row(i), label[i]);
  return out;
}

LabeledSet build_training_set(const Graph& g, const MceResult& mce, const FeatureMatrix& feats,
                              std::uint64_t seed, const std::string& source) {
  if (feats.rows() != g.num_vertices() || feats.kind != FeatureKind::Vertex) {
    throw ArgumentError("feature matrix was not computed on this graph");
  }
  return build_training_set(feats, mce.clique_vertices(), seed, source);
}

namespace {

double sigmoid(double z) {
  z = std::clamp(z, -30.0, 30.0);
  return 1.0 / (1.0 + std::exp(-z));
}

double margin(const LinearModel& model, std::span<const double> row) {
  double z = model.bias;
  for (std::size_t j = 0; j < row.size(); ++j) {
    z += model.weights[j] * (row[j] - model.scaling[j].mean) / model.scaling[j].stdev;
  }
  return z;
}

std::string to_hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

const char* profile_name(FeatureProfile p) {
  return p == FeatureProfile::Planted ? "planted" : "real-graph";
}

}  // namespace

std::string corpus_digest(std::span<const LabeledSet> sets) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& s : sets) {
    for (double x : s.rows) feed(std::bit_cast<std::uint64_t>(x));
    for (auto y : s.labels) feed(y);
  }
  return "fnv1a64:" + to_hex(h);
}

LinearModel train(std::span<const LabeledSet> sets, const TrainParams& params, ProfileSpec profile,
                  FeatureKind kind) {
  std::size_t total = 0;
  std::size_t width = 0;
  for (const auto& s : sets) {
    if (s.size() == 0) continue;
    if (width == 0) width = s.width;
    if (s.width != width) throw ArgumentError("training sets have different widths");
    if (s.rows.size() != s.size() * s.width) throw ArgumentError("malformed labeled set");
    total += s.size();
  }
  if (total == 0 || width == 0) throw ArgumentError("no training rows");

  // Gather and check.
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(total * width);
  y.reserve(total);
  for (const auto& s : sets) {
    for (double v : s.rows) {
      if (!std::isfinite(v)) throw DataError("non-finite feature value in training data");
    }
    x.insert(x.end(), s.rows.begin(), s.rows.end());
    for (auto l : s.labels) {
      if (l > 1) throw DataError("labels must be 0 or 1");
      y.push_back(l);
    }
  }

  LinearModel model;
  model.kind = kind;
  model.profile = profile;
  model.params = params;
  model.training_rows = total;
  model.corpus_digest = corpus_digest(sets);
  model.weights.assign(width, 0.0);
  model.scaling.resize(width);

  for (std::size_t j = 0; j < width; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < total; ++i) mean += x[i * width + j];
    mean /= static_cast<double>(total);
    double var = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      const double d = x[i * width + j] - mean;
      var += d * d;
    }
    double sd = std::sqrt(var / static_cast<double>(total));
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) sd = 1.0;
    model.scaling[j] = {mean, sd};
    for (std::size_t i = 0; i < total; ++i) x[i * width + j] = (x[i * width + j] - mean) / sd;
  }

  Rng rng(params.seed);
  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  auto& w = model.weights;
  for (std::size_t epoch = 1; epoch <= params.epochs; ++epoch) {
    rng.shuffle(std::span<std::uint32_t>(order));
    const double eta = params.learning_rate / std::sqrt(static_cast<double>(epoch));
    for (auto i : order) {
      const double* xi = x.data() + static_cast<std::size_t>(i) * width;
      double z = model.bias;
      for (std::size_t j = 0; j < width; ++j) z += w[j] * xi[j];
      const double grad = sigmoid(z) - y[i];
      for (std::size_t j = 0; j < width; ++j) w[j] -= eta * (grad * xi[j] + params.l2 * w[j]);
      model.bias -= eta * grad;
    }
  }
  return model;
}

double predict_p1(const LinearModel& model, std::span<const double> row) {
  if (row.size() != model.width()) {
    throw ArgumentError("row has " + std::to_string(row.size()) + " features, model expects " +
                        std::to_string(model.width()));
  }
  return sigmoid(margin(model, row));
}

double predict_p0(const LinearModel& model, std::span<const double> row) {
  return 1.0 - predict_p1(model, row);
}

double mean_log_loss(const LinearModel& model, std::span<const LabeledSet> sets) {
  double loss = 0.0;
  std::size_t count = 0;
  for (const auto& s : sets) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double p = predict_p1(model, s.row(i));
      loss -= s.labels[i] ? std::log(p) : std::log1p(-p);
      ++count;
    }
  }
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return (count ? loss / static_cast<double>(count) : 0.0) + 0.5 * model.params.l2 * reg;
}

double accuracy(const LinearModel& model, const LabeledSet& set) {
  if (set.size() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const bool predicted = predict_p1(model, set.row(i)) >= 0.5;
    hits += predicted == (set.labels[i] == 1) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(set.size());
}

std::vector<Coefficient> coefficient_ranking(const LinearModel& model) {
  const auto names = feature_names(model.kind);
  std::vector<Coefficient> out;
  for (std::size_t j = 0; j < model.width(); ++j) {
    out.push_back({j < names.size() ? names[j] : "x" + std::to_string(j + 1), model.weights[j]});
  }
  std::stable_sort(out.begin(), out.end(), [](const Coefficient& a, const Coefficient& b) {
    return std::abs(a.weight) > std::abs(b.weight);
  });
  return out;
}

json model_to_json(const LinearModel& model) {
  json means = json::array(), stdevs = json::array();
  for (const auto& s : model.scaling) {
    means.push_back(s.mean);
    stdevs.push_back(s.stdev);
  }
  return json{
      {"format_version", kModelFormatVersion},
      {"kind", model.kind == FeatureKind::Vertex ? "vertex" : "edge"},
      {"profile", profile_name(model.profile.profile)},
      {"edge_probability", model.profile.edge_probability},
      {"feature_names", feature_names(model.kind)},
      {"weights", model.weights},
      {"bias", model.bias},
      {"scaling", {{"mean", means}, {"stdev", stdevs}}},
      {"hyperparameters",
       {{"epochs", model.params.epochs},
        {"l2", model.params.l2},
        {"learning_rate", model.params.learning_rate},
        {"learning_rate_schedule", "learning_rate / sqrt(epoch)"},
        {"seed", model.params.seed},
        {"rng", kRngName}}},
      {"training_rows", model.training_rows},
      {"corpus_digest", model.corpus_digest},
  };
}

LinearModel model_from_json(const json& doc) {
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw FormatError("unsupported model format version " + std::to_string(version));
    }
    LinearModel m;
    const auto kind = doc.at("kind").get<std::string>();
    if (kind != "vertex" && kind != "edge") throw FormatError("unknown model kind '" + kind + "'");
    m.kind = kind == "vertex" ? FeatureKind::Vertex : FeatureKind::Edge;
    const auto profile = doc.at("profile").get<std::string>();
    if (profile != "planted" && profile != "real-graph") throw FormatError("unknown profile '" + profile + "'");
    m.profile.profile = profile == "planted" ? FeatureProfile::Planted : FeatureProfile::RealGraph;
    m.profile.edge_probability = doc.at("edge_probability").get<double>();
    m.weights = doc.at("weights").get<std::vector<double>>();
    m.bias = doc.at("bias").get<double>();
    const auto means = doc.at("scaling").at("mean").get<std::vector<double>>();
    const auto stdevs = doc.at("scaling").at("stdev").get<std::vector<double>>();
    if (means.size() != m.weights.size() || stdevs.size() != m.weights.size()) {
      throw FormatError("scaling arrays do not match the weight vector");
    }
    for (std::size_t j = 0; j < means.size(); ++j) {
      if (!(stdevs[j] > 0.0)) throw FormatError("scaling stdev must be positive");
      m.scaling.push_back({means[j], stdevs[j]});
    }
    const auto& hp = doc.at("hyperparameters");
    m.params.epochs = hp.at("epochs").get<std::size_t>();
    m.params.l2 = hp.at("l2").get<double>();
    m.params.learning_rate = hp.at("learning_rate").get<double>();
    m.params.seed = hp.at("seed").get<std::uint64_t>();
    m.training_rows = doc.at("training_rows").get<std::size_t>();
    m.corpus_digest = doc.at("corpus_digest").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::string& path, const LinearModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << model_to_json(model).dump(2) << '\n';
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("model '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace mcprune
