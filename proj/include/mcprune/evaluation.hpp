#pragma once

#include <cstddef>

#include "mcprune/graph.hpp"
#include "mcprune/mce.hpp"
#include "mcprune/sparsifier.hpp"

namespace mcprune {

struct EvaluationRow {
  std::size_t omega_before = 0;
  std::size_t omega_after = 0;
  std::size_t cliques_before = 0;
  std::size_t cliques_after = 0;
  /// 1 iff omega and the number of maximum cliques are both preserved.
  bool clique_accuracy = false;
  /// Relaxed measure: the clique found is at most one smaller than omega.
  bool relaxed_accuracy = false;
  long omega_loss = 0;  // omega_before - omega_after
  double vertex_ratio = 0.0;
  double edge_ratio = 0.0;
};

EvaluationRow evaluate(const MceResult& before, const MceResult& after);

EvaluationRow evaluate(const Graph& original, const MceResult& before, const Graph& pruned,
                       const MceResult& after, const PruneReport& report);

}  // namespace mcprune
