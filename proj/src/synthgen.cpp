#include "mcprune/synthgen.hpp"

#include <cmath>
#include <string>

#include "mcprune/errors.hpp"
#include "mcprune/features.hpp"
#include "mcprune/rng.hpp"

namespace mcprune {

namespace {
constexpr int kManifestVersion = 1;
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kPlantStream = 2;
constexpr std::uint64_t kSampleStream = 3;
}  // namespace

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

PlantedInstance plant_clique(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (k > n) throw ArgumentError("clique size " + std::to_string(k) + " exceeds " + std::to_string(n) + " vertices");
  Rng rng(seed);
  PlantedInstance inst;
  inst.n = n;
  inst.k = k;
  inst.seed = seed;
  const auto chosen = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k));
  inst.planted.assign(chosen.begin(), chosen.end());
  auto edges = g.edges();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(inst.planted[i], inst.planted[j]);
  }
  inst.graph = Graph::from_edges(n, edges, g.labels());
  return inst;
}

PlantedInstance generate_planted(std::size_t n, double p, std::size_t k, std::uint64_t seed) {
  auto inst = plant_clique(gen_gnp(n, p, derive_seed(seed, kGraphStream)), k, derive_seed(seed, kPlantStream));
  inst.p = p;
  inst.seed = seed;
  return inst;
}

std::size_t expected_clique_number(std::size_t n, double p) {
  if (n < 2) throw ArgumentError("expected clique number needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("edge probability must lie in (0, 1)");
  const double target = std::log(std::log(static_cast<double>(n)));
  const double log_p = std::log(p);
  const double nn = static_cast<double>(n);
  std::size_t best = 0;
  // C(n, w) p^C(w,2) is not monotone in w, so every w is checked.
  for (std::size_t w = 1; w <= n; ++w) {
    const double ww = static_cast<double>(w);
    const double log_binom = std::lgamma(nn + 1) - std::lgamma(ww + 1) - std::lgamma(nn - ww + 1);
    if (log_binom + ww * (ww - 1) / 2 * log_p >= target) best = w;
  }
  return best;
}

PlantedCorpus build_planted_corpus(const CorpusSpec& spec) {
  if (spec.k > spec.n) throw ArgumentError("clique size exceeds vertex count");
  if (spec.k == 0 || spec.k == spec.n) throw ArgumentError("planted clique must leave both classes non-empty");
  PlantedCorpus corpus;
  corpus.spec = spec;
  corpus.rows.balanced = true;
  const ProfileSpec profile{FeatureProfile::Planted, spec.p};
  for (std::uint64_t i = 0; corpus.rows.size() < spec.min_rows; ++i) {
    auto inst = generate_planted(spec.n, spec.p, spec.k, derive_seed(spec.seed, i));
    const auto feats = compute_vertex_features(inst.graph, profile);
    const auto set = build_training_set(feats, inst.planted, derive_seed(inst.seed, kSampleStream),
                                        "planted-" + std::to_string(i));
    corpus.rows.append(set);
    corpus.instances.push_back(std::move(inst));
  }
  return corpus;
}

nlohmann::json corpus_manifest(const PlantedCorpus& corpus) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& inst : corpus.instances) seeds.push_back(inst.seed);
  return {
      {"format_version", kManifestVersion},
      {"generator", kRngName},
      {"n", corpus.spec.n},
      {"p", corpus.spec.p},
      {"k", corpus.spec.k},
      {"min_rows", corpus.spec.min_rows},
      {"seed", corpus.spec.seed},
      {"instances", corpus.instances.size()},
      {"rows", corpus.rows.size()},
      {"instance_seeds", seeds},
  };
}

CorpusSpec corpus_spec_from_manifest(const nlohmann::json& manifest) {
  try {
    if (manifest.at("format_version").get<int>() != kManifestVersion) {
      throw FormatError("unsupported manifest version");
    }
    if (manifest.at("generator").get<std::string>() != kRngName) {
      throw FormatError("manifest was written with generator " + manifest.at("generator").get<std::string>());
    }
    CorpusSpec spec;
    spec.n = manifest.at("n").get<std::size_t>();
    spec.p = manifest.at("p").get<double>();
    spec.k = manifest.at("k").get<std::size_t>();
    spec.min_rows = manifest.at("min_rows").get<std::size_t>();
    spec.seed = manifest.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad corpus manifest: ") + e.what());
  }
}

}  // namespace mcprune
