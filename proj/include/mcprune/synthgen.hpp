#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcprune/classifier.hpp"
#include "mcprune/graph.hpp"

namespace mcprune {

/// Erdos-Renyi G(n, p): each pair u < v, in lexicographic order, is kept
/// when one uniform draw falls below p. Throws ArgumentError for p outside
/// [0, 1].
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

struct PlantedInstance {
  Graph graph;
  std::vector<Vertex> planted;  // ascending
  std::size_t n = 0;
  double p = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

/// Adds every missing edge inside a uniform k-subset. Throws ArgumentError
/// when k > |V|.
PlantedInstance plant_clique(const Graph& g, std::size_t k, std::uint64_t seed);

/// gen_gnp followed by plant_clique, both seeded from `seed`.
PlantedInstance generate_planted(std::size_t n, double p, std::size_t k, std::uint64_t seed);

/// Greatest w >= 1 with C(n, w) p^C(w,2) >= ln(n), evaluated in log space.
/// Returns 0 if no w qualifies. Requires n >= 2 and 0 < p < 1.
std::size_t expected_clique_number(std::size_t n, double p);

struct CorpusSpec {
  std::size_t n = 64;
  double p = 0.5;
  std::size_t k = 10;
  std::size_t min_rows = 2000;
  std::uint64_t seed = 0;
};

struct PlantedCorpus {
  CorpusSpec spec;
  std::vector<PlantedInstance> instances;
  LabeledSet rows;  // k positives and k negatives per instance
};

/// Generates planted instances (instance i seeded by derive_seed(seed, i))
/// until at least min_rows balanced rows exist. Labels come from the planted
/// set; features use the planted profile with edge probability p.
PlantedCorpus build_planted_corpus(const CorpusSpec& spec);

/// Everything needed to regenerate a corpus bit-exactly.
nlohmann::json corpus_manifest(const PlantedCorpus& corpus);
CorpusSpec corpus_spec_from_manifest(const nlohmann::json& manifest);

}  // namespace mcprune
