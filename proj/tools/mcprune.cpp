// mcprune: command-line front end.
//
//   convert  graph format translation
//   solve    maximum clique enumeration, JSON result
//   gen      planted-clique corpus or test instances
//   train    corpus or solved graphs -> one model file per stage
//   prune    graph + models -> report JSON, reduced DIMACS
//   althea   statistical clique heuristic
//   bench    solver timings with and without pruning, CSV

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcprune/althea.hpp"
#include "mcprune/classifier.hpp"
#include "mcprune/errors.hpp"
#include "mcprune/evaluation.hpp"
#include "mcprune/features.hpp"
#include "mcprune/graph.hpp"
#include "mcprune/mce.hpp"
#include "mcprune/report.hpp"
#include "mcprune/rng.hpp"
#include "mcprune/sparsifier.hpp"
#include "mcprune/synthgen.hpp"

namespace fs = std::filesystem;
using namespace mcprune;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kCsvSchemaVersion = 1;

std::optional<Seconds> limit_of(double seconds) {
  if (seconds <= 0) return std::nullopt;
  return Seconds(seconds);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

Graph read_graph(const std::string& path, const std::string& format) {
  if (!fs::exists(path)) throw IoError("graph file not found: " + path);
  return load_graph_file(path, parse_graph_format(format));
}

// ---------------------------------------------------------------- convert

struct ConvertOpts {
  std::string in, from = "edgelist", out, to = "dimacs";
};

int run_convert(const ConvertOpts& o) {
  const auto g = read_graph(o.in, o.from);
  write_graph_file(o.out, g, parse_graph_format(o.to));
  std::cerr << "wrote " << g.num_vertices() << " vertices, " << g.num_edges() << " edges to " << o.out << '\n';
  return 0;
}

// ------------------------------------------------------------------ solve

struct SolveOpts {
  std::string graph, format = "edgelist", out;
  double time_limit = 0;
  bool no_timing = false;
};

int run_solve(const SolveOpts& o) {
  const auto g = read_graph(o.graph, o.format);
  const auto r = enumerate_maximum_cliques(g, limit_of(o.time_limit));
  write_json(o.out, mce_to_json(g, r, {!o.no_timing}));
  return 0;
}

// -------------------------------------------------------------------- gen

struct GenOpts {
  std::size_t n = 64, k = 10, rows = 0, instances = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string out;
  bool graphs = false;
};

void write_corpus_csv(const std::string& path, const LabeledSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << std::setprecision(17) << "label";
  for (const auto& name : feature_names(FeatureKind::Vertex)) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << int(set.labels[i]);
    for (double x : set.row(i)) out << ',' << x;
    out << '\n';
  }
}

LabeledSet read_corpus_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  LabeledSet set;
  set.balanced = true;
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad number '" + cell + "'");
      }
    }
    if (values.size() != kVertexFeatureCount + 1) throw ParseError(line_no, "wrong column count");
    set.append(std::span<const double>(values).subspan(1), static_cast<std::uint8_t>(values[0] != 0));
  }
  return set;
}

int run_gen(const GenOpts& o) {
  ensure_dir(o.out);
  if (o.instances > 0) {
    auto manifest = nlohmann::json{{"format_version", 1}, {"generator", kRngName}, {"n", o.n},
                                   {"p", o.p},           {"k", o.k},               {"seed", o.seed}};
    auto list = nlohmann::json::array();
    for (std::size_t i = 0; i < o.instances; ++i) {
      const auto inst = generate_planted(o.n, o.p, o.k, derive_seed(o.seed, i));
      const std::string name = "graph-" + std::to_string(i) + ".dimacs";
      write_graph_file(o.out + "/" + name, inst.graph, GraphFormat::Dimacs);
      // DIMACS ids are 1-based.
      std::vector<std::size_t> planted;
      for (Vertex v : inst.planted) planted.push_back(v + 1);
      list.push_back({{"file", name}, {"seed", inst.seed}, {"planted", planted}});
    }
    manifest["instances"] = list;
    write_json(o.out + "/instances.json", manifest);
  }
  if (o.rows > 0) {
    const auto corpus = build_planted_corpus({o.n, o.p, o.k, o.rows, o.seed});
    write_corpus_csv(o.out + "/corpus.csv", corpus.rows);
    write_json(o.out + "/manifest.json", corpus_manifest(corpus));
    if (o.graphs) {
      for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
        write_graph_file(o.out + "/planted-" + std::to_string(i) + ".dimacs", corpus.instances[i].graph,
                         GraphFormat::Dimacs);
      }
    }
    std::cerr << corpus.instances.size() << " instances, " << corpus.rows.size() << " rows\n";
  }
  if (o.rows == 0 && o.instances == 0) throw ArgumentError("nothing to generate: give --rows or --instances");
  return 0;
}

// ------------------------------------------------------------------ train

struct StrategyOpts {
  std::string preset, strategy = "CC";
  double q0 = 0.95, d = 0.05;
  std::size_t stages = 1;

  PruneConfig config() const {
    if (!preset.empty()) return mcprune::preset(preset);
    PruneConfig cfg{parse_strategy(strategy), q0, d, stages};
    cfg.validate();
    return cfg;
  }
};

struct TrainOpts {
  std::string corpus, out, format = "edgelist", profile = "real";
  std::vector<std::string> graphs;
  StrategyOpts strategy;
  std::size_t epochs = 400;
  double l2 = 1e-4, learning_rate = 0.01, p = 0.5;
  std::uint64_t seed = 0;
  bool resolve = false, ranking = false;
};

ProfileSpec parse_profile(const std::string& name, double p) {
  if (name == "real") return {FeatureProfile::RealGraph, p};
  if (name == "planted") return {FeatureProfile::Planted, p};
  throw ConfigError("unknown feature profile '" + name + "' (expected real or planted)");
}

void print_ranking(const LinearModel& m, std::size_t stage) {
  std::cerr << "stage " << stage << " coefficients:";
  for (const auto& c : coefficient_ranking(m)) std::cerr << ' ' << c.feature << '=' << c.weight;
  std::cerr << '\n';
}

int run_train(const TrainOpts& o) {
  TrainParams params{o.epochs, o.l2, o.learning_rate, o.seed};
  ensure_dir(o.out);
  if (!o.corpus.empty()) {
    const auto manifest_path = o.corpus + "/manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot read " + manifest_path);
    const auto spec = corpus_spec_from_manifest(nlohmann::json::parse(in));
    const std::vector<LabeledSet> sets{read_corpus_csv(o.corpus + "/corpus.csv")};
    const auto model = train(sets, params, {FeatureProfile::Planted, spec.p});
    save_model(o.out + "/stage-1.json", model);
    if (o.ranking) print_ranking(model, 1);
    std::cerr << "training accuracy " << accuracy(model, sets[0]) << " on " << sets[0].size() << " rows\n";
    return 0;
  }
  if (o.graphs.empty()) throw ArgumentError("give --corpus or at least one --graph");
  std::vector<TrainingInstance> corpus;
  for (const auto& path : o.graphs) {
    auto g = read_graph(path, o.format);
    auto mce = enumerate_maximum_cliques(g);
    corpus.push_back({fs::path(path).filename().string(), std::move(g), std::move(mce)});
  }
  FitOptions fit{o.strategy.config(), params, parse_profile(o.profile, o.p), o.resolve, o.seed};
  const auto result = fit_multistage(corpus, fit);
  for (std::size_t s = 0; s < result.models.size(); ++s) {
    save_model(o.out + "/stage-" + std::to_string(s + 1) + ".json", result.models[s]);
    if (o.ranking) print_ranking(result.models[s], s + 1);
    std::cerr << "stage " << s + 1 << ": " << result.stage_rows[s] << " rows from " << result.stage_instances[s]
              << " instances\n";
  }
  return 0;
}

// ------------------------------------------------------------------ prune

struct PruneOpts {
  std::string graph, format = "edgelist", report, reduced;
  std::vector<std::string> models;
  StrategyOpts strategy;
  bool no_timing = false, evaluate = false;
  double time_limit = 0;
};

std::vector<LinearModel> load_models(const std::vector<std::string>& paths) {
  if (paths.empty()) throw ArgumentError("at least one --model is required");
  std::vector<LinearModel> models;
  for (const auto& p : paths) {
    if (!fs::exists(p)) throw IoError("model file not found: " + p);
    models.push_back(load_model(p));
  }
  return models;
}

int run_prune(const PruneOpts& o) {
  const auto g = read_graph(o.graph, o.format);
  const auto models = load_models(o.models);
  const auto report = run_strategy(g, models, o.strategy.config());
  auto j = prune_report_to_json(g, report, {!o.no_timing});
  if (o.evaluate) {
    const auto before = enumerate_maximum_cliques(g, limit_of(o.time_limit));
    const auto after = enumerate_maximum_cliques(report.final_graph, limit_of(o.time_limit));
    j["evaluation"] = evaluation_to_json(evaluate(g, before, report.final_graph, after, report));
  }
  write_json(o.report, j);
  if (!o.reduced.empty()) write_graph_file(o.reduced, report.final_graph, GraphFormat::Dimacs);
  return 0;
}

// ----------------------------------------------------------------- althea

struct AltheaOpts {
  std::string graph, format = "edgelist", out;
  double time_limit = 0;
  bool no_timing = false;
};

int run_althea(const AltheaOpts& o) {
  const auto g = read_graph(o.graph, o.format);
  const auto r = althea_run(g, exact_clique_solver(limit_of(o.time_limit)));
  write_json(o.out, althea_to_json(g, r, {!o.no_timing}));
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchOpts {
  std::vector<std::string> graphs, models;
  std::string format = "edgelist", csv;
  StrategyOpts strategy;
  std::size_t runs = 3;
  bool mean = false;
  double time_limit = 600;
  // planted mode
  std::size_t planted_n = 0, planted_k = 0, planted_count = 0;
  double planted_p = 0.5;
  std::uint64_t seed = 0;
};

double aggregate(std::vector<double> xs, bool mean) {
  if (mean) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

struct Timed {
  std::optional<MceResult> result;  // empty on timeout
  double seconds = 0;
  std::size_t lower_bound = 0;
};

Timed timed_solve(const Graph& g, const BenchOpts& o) {
  std::vector<double> times;
  Timed t;
  for (std::size_t r = 0; r < std::max<std::size_t>(o.runs, 1); ++r) {
    const auto start = Clock::now();
    try {
      auto res = enumerate_maximum_cliques(g, limit_of(o.time_limit));
      times.push_back(Seconds(Clock::now() - start).count());
      t.result = std::move(res);
    } catch (const TimeoutError& e) {
      t.lower_bound = e.best_lower_bound();
      t.seconds = o.time_limit;
      return t;
    }
  }
  t.seconds = aggregate(times, o.mean);
  return t;
}

std::string cell(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

int run_bench(const BenchOpts& o) {
  const auto models = load_models(o.models);
  const auto cfg = o.strategy.config();
  std::vector<std::pair<std::string, Graph>> instances;
  for (const auto& path : o.graphs) instances.emplace_back(fs::path(path).filename().string(), read_graph(path, o.format));
  for (std::size_t i = 0; i < o.planted_count; ++i) {
    auto inst = generate_planted(o.planted_n, o.planted_p, o.planted_k, derive_seed(o.seed, i));
    instances.emplace_back("planted-" + std::to_string(i), std::move(inst.graph));
  }
  if (instances.empty()) throw ArgumentError("no instances: give --graph or --planted-count");

  std::ofstream file;
  if (!o.csv.empty()) {
    file.open(o.csv);
    if (!file) throw IoError("cannot write " + o.csv);
  }
  std::ostream& out = o.csv.empty() ? std::cout : file;
  out << "# schema " << kCsvSchemaVersion << ", " << (o.mean ? "mean" : "median") << " of " << o.runs << " runs\n";
  out << "instance,vertices,edges,vertex_ratio,edge_ratio,omega,omega_pruned,omega_preserved,cliques,cliques_pruned,"
         "clique_accuracy,prune_s,solve_s,solve_pruned_s,speedup_solver,speedup_total\n";

  double sum_vr = 0, sum_er = 0, sum_acc = 0, sum_prune = 0, sum_pruned_solve = 0;
  double sum_solve = 0, sum_speed = 0, sum_total_speed = 0;
  std::size_t solved = 0;
  for (const auto& [name, g] : instances) {
    std::vector<double> prune_times;
    PruneReport report;
    for (std::size_t r = 0; r < std::max<std::size_t>(o.runs, 1); ++r) {
      report = run_strategy(g, models, cfg);
      prune_times.push_back(report.total_time.count());
    }
    const double prune_s = aggregate(prune_times, o.mean);
    const auto original = timed_solve(g, o);
    const auto pruned = timed_solve(report.final_graph, o);
    sum_vr += report.vertex_ratio;
    sum_er += report.edge_ratio;
    sum_prune += prune_s;

    out << name << ',' << g.num_vertices() << ',' << g.num_edges() << ',' << cell(report.vertex_ratio) << ','
        << cell(report.edge_ratio) << ',';
    const std::string to = "t/o";
    if (original.result && pruned.result) {
      const auto row = evaluate(*original.result, *pruned.result);
      const double speed = original.seconds / std::max(pruned.seconds, 1e-9);
      const double total = original.seconds / std::max(prune_s + pruned.seconds, 1e-9);
      out << row.omega_before << ',' << row.omega_after << ',' << (row.omega_before == row.omega_after ? "*" : "")
          << ',' << row.cliques_before << ',' << row.cliques_after << ',' << int(row.clique_accuracy) << ','
          << cell(prune_s) << ',' << cell(original.seconds) << ',' << cell(pruned.seconds) << ',' << cell(speed)
          << ',' << cell(total) << '\n';
      ++solved;
      sum_acc += row.clique_accuracy;
      sum_solve += original.seconds;
      sum_pruned_solve += pruned.seconds;
      sum_speed += speed;
      sum_total_speed += total;
    } else {
      // Speedups against a timed-out original are lower bounds.
      const auto omega_cell = [&](const Timed& t) {
        return t.result ? std::to_string(t.result->omega) : ">=" + std::to_string(t.lower_bound);
      };
      const auto count_cell = [&](const Timed& t) { return t.result ? std::to_string(t.result->cliques.size()) : to; };
      out << omega_cell(original) << ',' << omega_cell(pruned) << ",," << count_cell(original) << ','
          << count_cell(pruned) << ",," << cell(prune_s) << ',' << (original.result ? cell(original.seconds) : to)
          << ',' << (pruned.result ? cell(pruned.seconds) : to) << ',';
      if (!original.result && pruned.result) {
        out << ">=" << cell(original.seconds / std::max(pruned.seconds, 1e-9)) << ",>="
            << cell(original.seconds / std::max(prune_s + pruned.seconds, 1e-9)) << '\n';
      } else {
        out << ",\n";
      }
    }
  }
  const double n = static_cast<double>(instances.size());
  const double s = std::max<double>(static_cast<double>(solved), 1);
  out << "summary," << instances.size() << ',' << solved << ',' << cell(sum_vr / n) << ',' << cell(sum_er / n)
      << ",,,,,," << cell(sum_acc / s) << ',' << cell(sum_prune / n) << ',' << cell(sum_solve / s) << ','
      << cell(sum_pruned_solve / s) << ',' << cell(sum_speed / s) << ',' << cell(sum_total_speed / s) << '\n';
  return 0;
}

void add_strategy(CLI::App* cmd, StrategyOpts& s) {
  cmd->add_option("--preset", s.preset, "dense-1stage or sparse-5stage");
  cmd->add_option("--strategy", s.strategy, "CC or IC")->capture_default_str();
  cmd->add_option("--q0", s.q0, "first-stage threshold")->capture_default_str();
  cmd->add_option("--d", s.d, "IC threshold increment")->capture_default_str();
  cmd->add_option("--stages", s.stages, "number of stages")->capture_default_str();
}

void set_threads(int requested) {
  if (requested <= 0) {
    if (const char* env = std::getenv("MCPRUNE_THREADS")) requested = std::atoi(env);
  }
  if (requested > 0) omp_set_num_threads(requested);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned vertex pruning for maximum clique enumeration"};
  app.set_config("--config", "", "read options from a key = value file");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: $MCPRUNE_THREADS or all cores)");

  ConvertOpts conv;
  auto* c = app.add_subcommand("convert", "translate between graph formats");
  c->add_option("--in", conv.in)->required();
  c->add_option("--from", conv.from)->capture_default_str();
  c->add_option("--out", conv.out)->required();
  c->add_option("--to", conv.to)->capture_default_str();

  SolveOpts solve;
  auto* s = app.add_subcommand("solve", "enumerate all maximum cliques");
  s->add_option("--graph", solve.graph)->required();
  s->add_option("--format", solve.format)->capture_default_str();
  s->add_option("--out", solve.out, "JSON output (default stdout)");
  s->add_option("--time-limit", solve.time_limit, "seconds, 0 = none");
  s->add_flag("--no-timing", solve.no_timing, "omit timing fields");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "generate planted-clique data");
  g->add_option("--n", gen.n)->capture_default_str();
  g->add_option("--p", gen.p)->capture_default_str();
  g->add_option("--k", gen.k)->capture_default_str();
  g->add_option("--rows", gen.rows, "minimum balanced training rows");
  g->add_option("--instances", gen.instances, "also write this many test graphs");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out)->required();
  g->add_flag("--graphs", gen.graphs, "write the corpus graphs as DIMACS");

  TrainOpts tr;
  auto* t = app.add_subcommand("train", "fit per-stage pruning models");
  t->add_option("--corpus", tr.corpus, "directory written by gen");
  t->add_option("--graph", tr.graphs, "training graphs (solved here)");
  t->add_option("--format", tr.format)->capture_default_str();
  t->add_option("--profile", tr.profile, "real or planted")->capture_default_str();
  t->add_option("--p", tr.p, "edge probability for the planted profile")->capture_default_str();
  t->add_option("--out", tr.out)->required();
  t->add_option("--epochs", tr.epochs)->capture_default_str();
  t->add_option("--l2", tr.l2)->capture_default_str();
  t->add_option("--learning-rate", tr.learning_rate)->capture_default_str();
  t->add_option("--seed", tr.seed)->capture_default_str();
  t->add_flag("--resolve-each-stage", tr.resolve, "label stage s by its own maximum cliques");
  t->add_flag("--ranking", tr.ranking, "print coefficients by magnitude");
  add_strategy(t, tr.strategy);

  PruneOpts pr;
  auto* p = app.add_subcommand("prune", "remove vertices predicted outside every maximum clique");
  p->add_option("--graph", pr.graph)->required();
  p->add_option("--format", pr.format)->capture_default_str();
  p->add_option("--model", pr.models, "one per stage, or one for all")->required();
  p->add_option("--report", pr.report, "JSON output (default stdout)");
  p->add_option("--reduced", pr.reduced, "reduced graph, DIMACS");
  p->add_flag("--no-timing", pr.no_timing, "omit timing fields");
  p->add_flag("--evaluate", pr.evaluate, "solve before and after and report accuracy");
  p->add_option("--time-limit", pr.time_limit, "solver seconds with --evaluate");
  add_strategy(p, pr.strategy);

  AltheaOpts al;
  auto* a = app.add_subcommand("althea", "solve on the most significant neighborhood");
  a->add_option("--graph", al.graph)->required();
  a->add_option("--format", al.format)->capture_default_str();
  a->add_option("--out", al.out, "JSON output (default stdout)");
  a->add_option("--time-limit", al.time_limit, "seconds, 0 = none");
  a->add_flag("--no-timing", al.no_timing, "omit timing fields");

  BenchOpts be;
  auto* b = app.add_subcommand("bench", "solver time with and without pruning");
  b->add_option("--graph", be.graphs);
  b->add_option("--format", be.format)->capture_default_str();
  b->add_option("--model", be.models)->required();
  b->add_option("--csv", be.csv, "CSV output (default stdout)");
  b->add_option("--runs", be.runs)->capture_default_str();
  b->add_flag("--mean", be.mean, "average runs instead of taking the median");
  b->add_option("--time-limit", be.time_limit, "per solve, seconds")->capture_default_str();
  b->add_option("--planted-n", be.planted_n);
  b->add_option("--planted-p", be.planted_p)->capture_default_str();
  b->add_option("--planted-k", be.planted_k);
  b->add_option("--planted-count", be.planted_count);
  b->add_option("--seed", be.seed)->capture_default_str();
  add_strategy(b, be.strategy);

  CLI11_PARSE(app, argc, argv);
  set_threads(threads);
  try {
    if (*c) return run_convert(conv);
    if (*s) return run_solve(solve);
    if (*g) return run_gen(gen);
    if (*t) return run_train(tr);
    if (*p) return run_prune(pr);
    if (*a) return run_althea(al);
    if (*b) return run_bench(be);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
