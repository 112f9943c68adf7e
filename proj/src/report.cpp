#include "mcprune/report.hpp"

namespace mcprune {

namespace {

nlohmann::json labels_of(const Graph& g, std::span<const Vertex> vs) {
  auto out = nlohmann::json::array();
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

}  // namespace

nlohmann::json mce_to_json(const Graph& g, const MceResult& r, ReportOptions opts) {
  auto cliques = nlohmann::json::array();
  for (const auto& c : r.cliques) {
    std::vector<std::uint64_t> ids;
    for (Vertex v : c) ids.push_back(g.label(v));
    std::sort(ids.begin(), ids.end());
    cliques.push_back(ids);
  }
  nlohmann::json j{
      {"schema_version", kReportSchemaVersion},
      {"vertices", g.num_vertices()},
      {"edges", g.num_edges()},
      {"omega", r.omega},
      {"count", r.cliques.size()},
      {"cliques", cliques},
      {"nodes_explored", r.nodes_explored},
  };
  if (opts.include_timing) j["seconds"] = r.elapsed.count();
  return j;
}

nlohmann::json prune_report_to_json(const Graph& original, const PruneReport& r, ReportOptions opts) {
  auto stages = nlohmann::json::array();
  for (std::size_t s = 0; s < r.thresholds.size(); ++s) {
    nlohmann::json st{
        {"stage", s + 1},
        {"threshold", r.thresholds[s]},
        {"removed", labels_of(original, r.stage_removed[s])},
        {"vertex_ratio", r.stage_vertex_ratio[s]},
        {"edge_ratio", r.stage_edge_ratio[s]},
    };
    if (opts.include_timing) {
      st["feature_seconds"] = r.timings[s].features.count();
      st["seconds"] = r.timings[s].total.count();
    }
    stages.push_back(std::move(st));
  }
  nlohmann::json j{
      {"schema_version", kReportSchemaVersion},
      {"original_vertices", r.original_vertices},
      {"original_edges", r.original_edges},
      {"final_vertices", r.final_graph.num_vertices()},
      {"final_edges", r.final_graph.num_edges()},
      {"vertex_ratio", r.vertex_ratio},
      {"edge_ratio", r.edge_ratio},
      {"survivors", labels_of(original, r.survivors)},
      {"stages", stages},
      {"stopped_at_stage", r.stopped_at_stage ? nlohmann::json(*r.stopped_at_stage) : nlohmann::json()},
  };
  if (opts.include_timing) j["seconds"] = r.total_time.count();
  return j;
}

nlohmann::json althea_to_json(const Graph& g, const AltheaResult& r, ReportOptions opts) {
  nlohmann::json j{
      {"schema_version", kReportSchemaVersion},
      {"candidate", g.label(r.candidate)},
      {"candidate_score", r.candidate_score},
      {"clique_size", r.clique.size()},
      {"clique", labels_of(g, r.clique)},
      {"region_vertices", r.region_vertices},
      {"region_edges", r.region_edges},
      {"vertex_ratio", r.vertex_prune_ratio},
      {"edge_ratio", r.edge_prune_ratio},
  };
  if (opts.include_timing) {
    j["scoring_seconds"] = r.scoring_time.count();
    j["solve_seconds"] = r.solve_time.count();
  }
  return j;
}

nlohmann::json evaluation_to_json(const EvaluationRow& row) {
  return {
      {"omega_before", row.omega_before},   {"omega_after", row.omega_after},
      {"cliques_before", row.cliques_before}, {"cliques_after", row.cliques_after},
      {"clique_accuracy", row.clique_accuracy}, {"relaxed_accuracy", row.relaxed_accuracy},
      {"omega_loss", row.omega_loss},       {"vertex_ratio", row.vertex_ratio},
      {"edge_ratio", row.edge_ratio},
  };
}

}  // namespace mcprune
