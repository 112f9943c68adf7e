#pragma once

#include <string>

#include "json.hpp"
#include "mcprune/althea.hpp"
#include "mcprune/evaluation.hpp"
#include "mcprune/graph.hpp"
#include "mcprune/mce.hpp"
#include "mcprune/sparsifier.hpp"

// JSON documents written by the command-line tools. Vertices are reported by
// label, so ids match the input file. Timing fields are optional so that
// re-runs can be compared byte for byte.

namespace mcprune {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
  bool include_timing = true;
};

nlohmann::json mce_to_json(const Graph& g, const MceResult& r, ReportOptions opts = {});
nlohmann::json prune_report_to_json(const Graph& original, const PruneReport& r, ReportOptions opts = {});
nlohmann::json althea_to_json(const Graph& g, const AltheaResult& r, ReportOptions opts = {});
nlohmann::json evaluation_to_json(const EvaluationRow& row);

}  // namespace mcprune
