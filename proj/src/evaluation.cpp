#include "mcprune/evaluation.hpp"

#include "mcprune/errors.hpp"

namespace mcprune {

EvaluationRow evaluate(const MceResult& before, const MceResult& after) {
  EvaluationRow row;
  row.omega_before = before.omega;
  row.omega_after = after.omega;
  row.cliques_before = before.cliques.size();
  row.cliques_after = after.cliques.size();
  row.clique_accuracy = before.omega == after.omega && row.cliques_before == row.cliques_after;
  row.relaxed_accuracy = after.omega + 1 >= before.omega;
  row.omega_loss = static_cast<long>(before.omega) - static_cast<long>(after.omega);
  return row;
}

EvaluationRow evaluate(const Graph& original, const MceResult& before, const Graph& pruned,
                       const MceResult& after, const PruneReport& report) {
  if (report.original_vertices != original.num_vertices() ||
      report.final_graph.num_vertices() != pruned.num_vertices()) {
    throw ArgumentError("prune report does not describe these graphs");
  }
  auto row = evaluate(before, after);
  row.vertex_ratio = report.vertex_ratio;
  row.edge_ratio = report.edge_ratio;
  return row;
}

}  // namespace mcprune
