// Copyright 2026 The depgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// depgraph command-line tool: generates synthetic dependency graphs,
// analyzes edge lists, and runs the statistical comparison pipeline.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "depgraph/degree.hpp"
#include "depgraph/edge_list.hpp"
#include "depgraph/fitting.hpp"
#include "depgraph/generators.hpp"
#include "depgraph/graph.hpp"
#include "depgraph/io.hpp"
#include "depgraph/random.hpp"
#include "depgraph/stats.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

enum class OutputFormat { text, csv, json_format };

const std::map<std::string, OutputFormat> kFormatNames = {
    {"text", OutputFormat::text},
    {"csv", OutputFormat::csv},
    {"json", OutputFormat::json_format}};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& requested) {
  const std::uint64_t seed = requested ? *requested : fresh_seed();
  std::cerr << "seed: " << seed << "\n";
  return seed;
}

void write_text_output(const std::string& text,
                       const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw depgraph::IoError("cannot open " + out_path);
  out << text;
  if (!out) throw depgraph::IoError("failed writing " + out_path);
}

depgraph::LabeledGraph load_graph(const std::string& path,
                                  bool report_diagnostics = true) {
  depgraph::ParseDiagnostics diagnostics;
  depgraph::LabeledGraph g = depgraph::parse_edge_list_file(path, &diagnostics);
  if (report_diagnostics &&
      (diagnostics.self_loops_dropped > 0 ||
       diagnostics.duplicate_edges_dropped > 0))
    std::cerr << path << ": dropped " << diagnostics.self_loops_dropped
              << " self-loop(s), " << diagnostics.duplicate_edges_dropped
              << " duplicate edge(s)\n";
  return g;
}

std::vector<std::string> read_prefix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw depgraph::IoError("cannot open " + path);
  std::vector<std::string> prefixes;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    prefixes.push_back(line);
  }
  return prefixes;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateConfig {
  std::string model;
  std::optional<std::uint32_t> nodes;
  std::optional<std::uint64_t> iterations;
  std::optional<double> p, q, edge_prob, create_prob, transfer_prob;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

template <class T>
T require_flag(const std::optional<T>& value, const std::string& flag,
               const std::string& model) {
  if (!value)
    throw std::invalid_argument(flag + " is required for model " + model);
  return *value;
}

int run_generate(const GenerateConfig& cfg) {
  const std::uint64_t seed = resolve_seed(cfg.seed);
  depgraph::IndexedGraph g;
  if (cfg.model == "gdgnc") {
    g = depgraph::generate_gdgnc({require_flag(cfg.nodes, "--nodes", "gdgnc"),
                                  require_flag(cfg.p, "--p", "gdgnc"),
                                  require_flag(cfg.q, "--q", "gdgnc"), seed});
  } else if (cfg.model == "er") {
    g = depgraph::generate_er(
        {require_flag(cfg.nodes, "--nodes", "er"),
         require_flag(cfg.edge_prob, "--edge-prob", "er"), seed});
  } else if (cfg.model == "bf") {
    const double create = require_flag(cfg.create_prob, "--create-prob", "bf");
    const double transfer =
        require_flag(cfg.transfer_prob, "--transfer-prob", "bf");
    if (cfg.nodes && cfg.iterations)
      throw std::invalid_argument("bf takes --nodes or --iterations, not both");
    if (cfg.nodes)
      g = depgraph::generate_bf_grow({*cfg.nodes, create, transfer, seed});
    else if (cfg.iterations)
      g = depgraph::generate_bf({*cfg.iterations, create, transfer, seed});
    else
      throw std::invalid_argument("bf requires --nodes or --iterations");
  } else {
    throw std::invalid_argument("unknown model " + cfg.model);
  }
  depgraph::write_edge_list_file(g, cfg.out_path);
  std::cerr << "model=" << cfg.model << " nodes=" << g.node_count()
            << " edges=" << g.edge_count() << " -> " << cfg.out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeConfig {
  std::string input;
  OutputFormat format = OutputFormat::text;
  std::string dist_dir;
  depgraph::DistMode dist_mode = depgraph::DistMode::proportion;
  std::string out_path;
};

int run_analyze(const AnalyzeConfig& cfg) {
  depgraph::ParseDiagnostics diagnostics;
  const depgraph::LabeledGraph g =
      depgraph::parse_edge_list_file(cfg.input, &diagnostics);
  std::optional<double> gamma;
  if (g.node_count() >= 2) gamma = depgraph::density(g);
  const std::string gamma_text =
      gamma ? depgraph::format_double(*gamma) : "undefined";
  std::cerr << "self_loops_dropped: " << diagnostics.self_loops_dropped
            << "\nduplicate_edges_dropped: "
            << diagnostics.duplicate_edges_dropped << "\n";

  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      text << "graph: " << cfg.input << "\nnodes: " << g.node_count()
           << "\nedges: " << g.edge_count() << "\ndensity: " << gamma_text
           << "\n";
      break;
    case OutputFormat::csv:
      text << "graph,nodes,edges,density\n"
           << cfg.input << ',' << g.node_count() << ',' << g.edge_count()
           << ',' << (gamma ? depgraph::format_double(*gamma) : "") << "\n";
      break;
    case OutputFormat::json_format: {
      json doc{{"graph", cfg.input},
               {"nodes", g.node_count()},
               {"edges", g.edge_count()},
               {"density", gamma ? json(*gamma) : json(nullptr)},
               {"self_loops_dropped", diagnostics.self_loops_dropped},
               {"duplicate_edges_dropped",
                diagnostics.duplicate_edges_dropped}};
      text << doc.dump(2) << "\n";
      break;
    }
  }
  write_text_output(text.str(), cfg.out_path);

  if (!cfg.dist_dir.empty()) {
    fs::create_directories(cfg.dist_dir);
    const std::string stem = fs::path(cfg.input).stem().string();
    for (const auto direction :
         {depgraph::Direction::in, depgraph::Direction::out})
      for (const auto form : {depgraph::DistForm::cdf, depgraph::DistForm::icd}) {
        const fs::path path =
            fs::path(cfg.dist_dir) /
            (stem + "." + depgraph::to_string(direction) + "." +
             depgraph::to_string(form) + ".csv");
        depgraph::emit_distribution_file(g, direction, form, cfg.dist_mode,
                                         path.string());
      }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// filter-endo

struct FilterEndoConfig {
  std::string input;
  std::string prefixes_path;
  std::string out_path;
};

int run_filter_endo(const FilterEndoConfig& cfg) {
  const depgraph::LabeledGraph g = load_graph(cfg.input);
  const depgraph::NodeClassifier classifier(read_prefix_file(cfg.prefixes_path));
  const depgraph::LabeledGraph endo = depgraph::filter_endo(g, classifier);
  depgraph::write_edge_list_file(endo, cfg.out_path);
  std::cerr << "kept " << endo.node_count() << "/" << g.node_count()
            << " nodes, " << endo.edge_count() << "/" << g.edge_count()
            << " edges -> " << cfg.out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareConfig {
  std::string graph_a;
  std::string graph_b;
  double alpha = 0.01;
  OutputFormat format = OutputFormat::text;
  std::string out_path;
};

json ks_to_json(const depgraph::KsResult& r) {
  return json{{"statistic", r.statistic}, {"n1", r.n1},
              {"n2", r.n2},               {"alpha", r.alpha},
              {"critical_value", r.critical_value},
              {"reject_h0", r.reject_h0}};
}

int run_compare(const CompareConfig& cfg) {
  const depgraph::LabeledGraph a = load_graph(cfg.graph_a);
  const depgraph::LabeledGraph b = load_graph(cfg.graph_b);
  const auto in_result = depgraph::ks_two_sample_test(
      depgraph::degree_view(a, depgraph::Direction::in),
      depgraph::degree_view(b, depgraph::Direction::in), cfg.alpha);
  const auto out_result = depgraph::ks_two_sample_test(
      depgraph::degree_view(a, depgraph::Direction::out),
      depgraph::degree_view(b, depgraph::Direction::out), cfg.alpha);

  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      for (const auto& [name, r] :
           {std::pair{"in", in_result}, std::pair{"out", out_result}})
        text << name << ": K=" << depgraph::format_double(r.statistic)
             << " n1=" << r.n1 << " n2=" << r.n2
             << " critical=" << depgraph::format_double(r.critical_value)
             << " reject_h0=" << (r.reject_h0 ? "true" : "false") << "\n";
      break;
    case OutputFormat::csv:
      text << "direction,statistic,n1,n2,alpha,critical_value,reject_h0\n";
      for (const auto& [name, r] :
           {std::pair{"in", in_result}, std::pair{"out", out_result}})
        text << name << ',' << depgraph::format_double(r.statistic) << ','
             << r.n1 << ',' << r.n2 << ','
             << depgraph::format_double(r.alpha) << ','
             << depgraph::format_double(r.critical_value) << ','
             << (r.reject_h0 ? "true" : "false") << "\n";
      break;
    case OutputFormat::json_format: {
      json doc{{"graph_a", cfg.graph_a},
               {"graph_b", cfg.graph_b},
               {"alpha", cfg.alpha},
               {"in", ks_to_json(in_result)},
               {"out", ks_to_json(out_result)}};
      text << doc.dump(2) << "\n";
      break;
    }
  }
  write_text_output(text.str(), cfg.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitConfig {
  std::string input;
  std::string model = "gdgnc";
  double p_min = 0.0, p_max = 1.0, p_step = 0.05;
  double q_min = 0.0, q_max = 1.0, q_step = 0.05;
  bool p_min_given = false;
  std::uint32_t replicates = 30;
  std::optional<std::uint64_t> seed;
  std::string objective = "median";
  bool refine = false;
  double refine_step = 0.01;
  unsigned threads = 0;
  std::string out_path;
  std::string cells_csv;
  OutputFormat format = OutputFormat::text;
};

depgraph::FitModel parse_fit_model(const std::string& name) {
  if (name == "gdgnc") return depgraph::FitModel::gdgnc;
  if (name == "bf") return depgraph::FitModel::baxter_frean;
  throw std::invalid_argument("unknown fit model " + name +
                              " (expected gdgnc or bf)");
}

json fit_report_to_json(const depgraph::FitReport& report) {
  json cells = json::array();
  for (const auto& cell : report.cells)
    cells.push_back(json{{"p", cell.p},
                         {"q", cell.q},
                         {"delta_min", cell.delta_min},
                         {"delta_median", cell.delta_median},
                         {"delta_max", cell.delta_max}});
  return json{{"model", depgraph::to_string(report.model)},
              {"objective_mode", depgraph::to_string(report.objective_mode)},
              {"best_p", report.best_p},
              {"best_q", report.best_q},
              {"objective", report.objective},
              {"node_count_used", report.node_count_used},
              {"base_seed", report.base_seed},
              {"cells", cells}};
}

int run_fit(const FitConfig& cfg) {
  const depgraph::LabeledGraph real = load_graph(cfg.input);
  const depgraph::FitModel model = parse_fit_model(cfg.model);
  const std::uint64_t seed = resolve_seed(cfg.seed);

  depgraph::GridSpec grid;
  grid.p_lo = cfg.p_min;
  // The growth baseline cannot run with a zero creation rate; keep the
  // default grid clear of it.
  if (model == depgraph::FitModel::baxter_frean && !cfg.p_min_given &&
      cfg.p_min == 0.0)
    grid.p_lo = cfg.p_step;
  grid.p_hi = cfg.p_max;
  grid.p_step = cfg.p_step;
  grid.q_lo = cfg.q_min;
  grid.q_hi = cfg.q_max;
  grid.q_step = cfg.q_step;
  grid.replicates = cfg.replicates;

  depgraph::FitOptions options;
  options.objective = cfg.objective == "min"
                          ? depgraph::FitObjective::min_delta
                          : depgraph::FitObjective::median_delta;
  options.threads = cfg.threads;

  json doc;
  const depgraph::FitReport* final_report = nullptr;
  depgraph::FitReport single;
  depgraph::TwoStageFitReport staged;
  if (cfg.refine) {
    staged = depgraph::fit_two_stage(real, model, seed, grid, cfg.refine_step,
                                     options);
    final_report = &staged.refined;
    doc = json{{"coarse", fit_report_to_json(staged.coarse)},
               {"refined", fit_report_to_json(staged.refined)}};
  } else {
    single = depgraph::fit(real, model, grid, seed, options);
    final_report = &single;
    doc = fit_report_to_json(single);
  }

  if (!cfg.out_path.empty())
    write_text_output(doc.dump(2) + "\n", cfg.out_path);
  if (!cfg.cells_csv.empty())
    depgraph::write_fit_cells_csv_file(*final_report, cfg.cells_csv);

  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      text << "model: " << depgraph::to_string(final_report->model)
           << "\nnodes: " << final_report->node_count_used
           << "\ncells: " << final_report->cells.size()
           << "\nbest_p: " << depgraph::format_double(final_report->best_p)
           << "\nbest_q: " << depgraph::format_double(final_report->best_q)
           << "\n" << depgraph::to_string(final_report->objective_mode)
           << ": " << depgraph::format_double(final_report->objective) << "\n";
      break;
    case OutputFormat::csv:
      text << "model,objective_mode,best_p,best_q,objective,nodes,base_seed\n"
           << depgraph::to_string(final_report->model) << ','
           << depgraph::to_string(final_report->objective_mode) << ','
           << depgraph::format_double(final_report->best_p) << ','
           << depgraph::format_double(final_report->best_q) << ','
           << depgraph::format_double(final_report->objective) << ','
           << final_report->node_count_used << ','
           << final_report->base_seed << "\n";
      break;
    case OutputFormat::json_format:
      text << doc.dump(2) << "\n";
      break;
  }
  if (cfg.out_path.empty() || cfg.format != OutputFormat::json_format)
    std::cout << text.str();
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / compare-models

struct ModelParams {
  std::string model;
  std::optional<double> p, q, edge_prob, create_prob, transfer_prob;
};

depgraph::ModelSpec build_model_spec(const ModelParams& params,
                                     std::uint32_t n_nodes,
                                     double real_density,
                                     std::uint64_t seed) {
  if (params.model == "gdgnc")
    return depgraph::GdGncParams{n_nodes,
                                 require_flag(params.p, "--p", "gdgnc"),
                                 require_flag(params.q, "--q", "gdgnc"), seed};
  if (params.model == "er")
    return depgraph::ErParams{
        n_nodes, params.edge_prob ? *params.edge_prob : real_density, seed};
  if (params.model == "bf")
    return depgraph::BfGrowParams{
        n_nodes, require_flag(params.create_prob, "--create-prob", "bf"),
        require_flag(params.transfer_prob, "--transfer-prob", "bf"), seed};
  throw std::invalid_argument("unknown model " + params.model);
}

json model_spec_to_json(const depgraph::ModelSpec& spec) {
  return std::visit(
      [](const auto& params) -> json {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, depgraph::GdGncParams>)
          return json{{"model", "gdgnc"},
                      {"n_nodes", params.n_nodes},
                      {"p", params.p},
                      {"q", params.q},
                      {"base_seed", params.seed}};
        else if constexpr (std::is_same_v<T, depgraph::ErParams>)
          return json{{"model", "er"},
                      {"n_nodes", params.n_nodes},
                      {"edge_prob", params.edge_prob},
                      {"base_seed", params.seed}};
        else if constexpr (std::is_same_v<T, depgraph::BfParams>)
          return json{{"model", "bf"},
                      {"n_iterations", params.n_iterations},
                      {"create_prob", params.create_prob},
                      {"transfer_prob", params.transfer_prob},
                      {"base_seed", params.seed}};
        else
          return json{{"model", "bf"},
                      {"n_nodes", params.n_nodes},
                      {"create_prob", params.create_prob},
                      {"transfer_prob", params.transfer_prob},
                      {"base_seed", params.seed}};
      },
      spec);
}

std::string model_spec_to_text(const depgraph::ModelSpec& spec) {
  const json j = model_spec_to_json(spec);
  std::ostringstream text;
  text << j.at("model").get<std::string>();
  for (const auto& [key, value] : j.items())
    if (key != "model") text << ' ' << key << '=' << value.dump();
  return text.str();
}

json summary_to_json(const depgraph::EvalSummary& summary) {
  return json{{"delta_min", summary.delta_min},
              {"delta_median", summary.delta_median},
              {"delta_max", summary.delta_max},
              {"deltas", summary.deltas}};
}

struct EvaluateConfig {
  std::string input;
  ModelParams params;
  std::optional<std::uint32_t> nodes;
  std::uint32_t replicates = 30;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  OutputFormat format = OutputFormat::text;
  std::string out_path;
};

int run_evaluate(const EvaluateConfig& cfg) {
  const depgraph::LabeledGraph real = load_graph(cfg.input);
  const std::uint64_t seed = resolve_seed(cfg.seed);
  const auto n_nodes = cfg.nodes
                           ? *cfg.nodes
                           : static_cast<std::uint32_t>(real.node_count());
  const double gamma = real.node_count() >= 2 ? depgraph::density(real) : 0.0;
  const depgraph::ModelSpec spec =
      build_model_spec(cfg.params, n_nodes, gamma, seed);
  const depgraph::EvalSummary summary =
      depgraph::evaluate(real, spec, cfg.replicates, seed, cfg.threads);

  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      text << "graph: " << cfg.input << "\nmodel: "
           << model_spec_to_text(spec) << "\nreplicates: " << cfg.replicates
           << "\ndelta_min: " << depgraph::format_double(summary.delta_min)
           << "\ndelta_median: "
           << depgraph::format_double(summary.delta_median)
           << "\ndelta_max: " << depgraph::format_double(summary.delta_max)
           << "\n";
      break;
    case OutputFormat::csv:
      text << "graph,model,replicates,delta_min,delta_median,delta_max\n"
           << cfg.input << ',' << cfg.params.model << ',' << cfg.replicates
           << ',' << depgraph::format_double(summary.delta_min) << ','
           << depgraph::format_double(summary.delta_median) << ','
           << depgraph::format_double(summary.delta_max) << "\n";
      break;
    case OutputFormat::json_format: {
      json doc{{"graph", cfg.input},
               {"spec", model_spec_to_json(spec)},
               {"replicates", cfg.replicates},
               {"summary", summary_to_json(summary)}};
      text << doc.dump(2) << "\n";
      break;
    }
  }
  write_text_output(text.str(), cfg.out_path);
  return 0;
}

struct CompareModelsConfig {
  std::string input;
  ModelParams params_a;
  ModelParams params_b;
  std::optional<std::uint32_t> nodes;
  std::uint32_t replicates = 30;
  double alpha = 0.05;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  OutputFormat format = OutputFormat::text;
  std::string out_path;
};

int run_compare_models(const CompareModelsConfig& cfg) {
  const depgraph::LabeledGraph real = load_graph(cfg.input);
  const std::uint64_t seed = resolve_seed(cfg.seed);
  const auto n_nodes = cfg.nodes
                           ? *cfg.nodes
                           : static_cast<std::uint32_t>(real.node_count());
  const double gamma = real.node_count() >= 2 ? depgraph::density(real) : 0.0;
  const depgraph::ModelSpec spec_a = build_model_spec(
      cfg.params_a, n_nodes, gamma, depgraph::derive_seed(seed, 0));
  const depgraph::ModelSpec spec_b = build_model_spec(
      cfg.params_b, n_nodes, gamma, depgraph::derive_seed(seed, 1));
  const depgraph::ModelComparison cmp = depgraph::compare_models(
      real, spec_a, spec_b, cfg.replicates, cfg.alpha, cfg.threads);

  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      text << "graph: " << cfg.input << "\nmodel_a: "
           << model_spec_to_text(spec_a) << "\nmodel_b: "
           << model_spec_to_text(spec_b)
           << "\ndelta_a: min=" << depgraph::format_double(cmp.a.delta_min)
           << " median=" << depgraph::format_double(cmp.a.delta_median)
           << " max=" << depgraph::format_double(cmp.a.delta_max)
           << "\ndelta_b: min=" << depgraph::format_double(cmp.b.delta_min)
           << " median=" << depgraph::format_double(cmp.b.delta_median)
           << " max=" << depgraph::format_double(cmp.b.delta_max)
           << "\nmwu: U=" << depgraph::format_double(cmp.mwu.u_statistic)
           << " p_value=" << depgraph::format_double(cmp.mwu.p_value)
           << " alpha=" << depgraph::format_double(cmp.mwu.alpha)
           << " reject_h0=" << (cmp.mwu.reject_h0 ? "true" : "false") << "\n";
      break;
    case OutputFormat::csv:
      text << "graph,model_a,model_b,replicates,delta_median_a,"
              "delta_median_b,u_statistic,p_value,alpha,reject_h0\n"
           << cfg.input << ',' << cfg.params_a.model << ','
           << cfg.params_b.model << ',' << cfg.replicates << ','
           << depgraph::format_double(cmp.a.delta_median) << ','
           << depgraph::format_double(cmp.b.delta_median) << ','
           << depgraph::format_double(cmp.mwu.u_statistic) << ','
           << depgraph::format_double(cmp.mwu.p_value) << ','
           << depgraph::format_double(cmp.mwu.alpha) << ','
           << (cmp.mwu.reject_h0 ? "true" : "false") << "\n";
      break;
    case OutputFormat::json_format: {
      json doc{{"graph", cfg.input},
               {"spec_a", model_spec_to_json(spec_a)},
               {"spec_b", model_spec_to_json(spec_b)},
               {"replicates", cfg.replicates},
               {"summary_a", summary_to_json(cmp.a)},
               {"summary_b", summary_to_json(cmp.b)},
               {"mwu", json{{"u_statistic", cmp.mwu.u_statistic},
                            {"n1", cmp.mwu.n1},
                            {"n2", cmp.mwu.n2},
                            {"p_value", cmp.mwu.p_value},
                            {"alpha", cmp.mwu.alpha},
                            {"reject_h0", cmp.mwu.reject_h0}}}};
      text << doc.dump(2) << "\n";
      break;
    }
  }
  write_text_output(text.str(), cfg.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// pairwise-ks

struct PairwiseConfig {
  std::string directory;
  double alpha = 0.01;
  std::string suffix = ".edges";
  OutputFormat format = OutputFormat::text;
  std::string out_path;
  std::string pairs_csv;
};

int run_pairwise_ks(const PairwiseConfig& cfg) {
  std::vector<fs::path> files;
  try {
    for (const auto& entry : fs::directory_iterator(cfg.directory))
      if (entry.is_regular_file() &&
          entry.path().string().ends_with(cfg.suffix))
        files.push_back(entry.path());
  } catch (const fs::filesystem_error& e) {
    throw depgraph::IoError(std::string("cannot list directory: ") + e.what());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2)
    throw std::invalid_argument("pairwise-ks needs at least two graphs");

  struct LoadedGraph {
    std::string name;
    depgraph::DegreeView in;
    depgraph::DegreeView out;
  };
  std::vector<LoadedGraph> graphs;
  graphs.reserve(files.size());
  for (const auto& path : files) {
    const depgraph::LabeledGraph g = load_graph(path.string());
    graphs.push_back({path.filename().string(),
                      depgraph::degree_view(g, depgraph::Direction::in),
                      depgraph::degree_view(g, depgraph::Direction::out)});
  }

  struct PairRow {
    std::string a, b, direction;
    depgraph::KsResult result;
  };
  std::vector<PairRow> rows;
  std::size_t rejected_in = 0, rejected_out = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      const auto r_in =
          depgraph::ks_two_sample_test(graphs[i].in, graphs[j].in, cfg.alpha);
      const auto r_out = depgraph::ks_two_sample_test(graphs[i].out,
                                                      graphs[j].out, cfg.alpha);
      rejected_in += r_in.reject_h0 ? 1 : 0;
      rejected_out += r_out.reject_h0 ? 1 : 0;
      rows.push_back({graphs[i].name, graphs[j].name, "in", r_in});
      rows.push_back({graphs[i].name, graphs[j].name, "out", r_out});
    }
  const std::size_t pairs = graphs.size() * (graphs.size() - 1) / 2;

  if (!cfg.pairs_csv.empty()) {
    std::ofstream out(cfg.pairs_csv, std::ios::binary);
    if (!out) throw depgraph::IoError("cannot open " + cfg.pairs_csv);
    out << "graph_a,graph_b,direction,statistic,critical_value,reject_h0\n";
    for (const auto& row : rows)
      out << row.a << ',' << row.b << ',' << row.direction << ','
          << depgraph::format_double(row.result.statistic) << ','
          << depgraph::format_double(row.result.critical_value) << ','
          << (row.result.reject_h0 ? "true" : "false") << "\n";
  }

  const auto ratio = [pairs](std::size_t count) {
    return static_cast<double>(count) / static_cast<double>(pairs);
  };
  std::ostringstream text;
  switch (cfg.format) {
    case OutputFormat::text:
      text << "graphs: " << graphs.size() << " (" << pairs << " pairs, "
           << 2 * pairs << " tests, alpha="
           << depgraph::format_double(cfg.alpha) << ")\n"
           << "in:    rejected " << rejected_in << "/" << pairs
           << ", not rejected " << pairs - rejected_in << "/" << pairs << "\n"
           << "out:   rejected " << rejected_out << "/" << pairs
           << ", not rejected " << pairs - rejected_out << "/" << pairs << "\n"
           << "total: rejected " << rejected_in + rejected_out << "/"
           << 2 * pairs << ", not rejected "
           << 2 * pairs - rejected_in - rejected_out << "/" << 2 * pairs
           << "\n";
      break;
    case OutputFormat::csv:
      text << "direction,rejected,not_rejected,total,rejected_ratio\n"
           << "in," << rejected_in << ',' << pairs - rejected_in << ','
           << pairs << ',' << depgraph::format_double(ratio(rejected_in))
           << "\nout," << rejected_out << ',' << pairs - rejected_out << ','
           << pairs << ',' << depgraph::format_double(ratio(rejected_out))
           << "\ntotal," << rejected_in + rejected_out << ','
           << 2 * pairs - rejected_in - rejected_out << ',' << 2 * pairs
           << ','
           << depgraph::format_double(
                  static_cast<double>(rejected_in + rejected_out) /
                  static_cast<double>(2 * pairs))
           << "\n";
      break;
    case OutputFormat::json_format: {
      json file_names = json::array();
      for (const auto& g : graphs) file_names.push_back(g.name);
      json pair_rows = json::array();
      for (const auto& row : rows)
        pair_rows.push_back(json{{"graph_a", row.a},
                                 {"graph_b", row.b},
                                 {"direction", row.direction},
                                 {"statistic", row.result.statistic},
                                 {"critical_value", row.result.critical_value},
                                 {"reject_h0", row.result.reject_h0}});
      json doc{{"alpha", cfg.alpha},
               {"graphs", file_names},
               {"pairs", pairs},
               {"tests", 2 * pairs},
               {"in", json{{"rejected", rejected_in},
                           {"not_rejected", pairs - rejected_in}}},
               {"out", json{{"rejected", rejected_out},
                            {"not_rejected", pairs - rejected_out}}},
               {"results", pair_rows}};
      text << doc.dump(2) << "\n";
      break;
    }
  }
  write_text_output(text.str(), cfg.out_path);
  return 0;
}

void add_format_option(CLI::App* cmd, OutputFormat& format) {
  cmd->add_option("--format", format, "Output format (text, csv, json)")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "depgraph: generative models and degree-distribution statistics for "
      "software dependency graphs"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 usage error, 2 I/O error, 3 invalid input or\n"
      "parameters, 4 internal error.\n"
      "\n"
      "Edge-list format: one 'source target' pair per line (whitespace\n"
      "separated), '#' comments and blank lines ignored, LF line endings\n"
      "emitted.\n"
      "\n"
      "CSV column orders:\n"
      "  analyze:        graph,nodes,edges,density\n"
      "  compare:        direction,statistic,n1,n2,alpha,critical_value,"
      "reject_h0\n"
      "  distributions:  degree,value\n"
      "  fit (summary):  model,objective_mode,best_p,best_q,objective,nodes,"
      "base_seed\n"
      "  fit (cells):    p,q,delta_min,delta_median,delta_max\n"
      "  evaluate:       graph,model,replicates,delta_min,delta_median,"
      "delta_max\n"
      "  compare-models: graph,model_a,model_b,replicates,delta_median_a,"
      "delta_median_b,u_statistic,p_value,alpha,reject_h0\n"
      "  pairwise-ks:    direction,rejected,not_rejected,total,"
      "rejected_ratio\n"
      "\n"
      "Randomized subcommands (generate, fit, evaluate, compare-models)\n"
      "print the effective seed on stderr; pass --seed to reproduce a run\n"
      "byte for byte.");

  GenerateConfig generate_cfg;
  auto* generate_cmd =
      app.add_subcommand("generate", "Generate a synthetic graph");
  generate_cmd->add_option("--model", generate_cfg.model,
                           "Model: gdgnc, er, or bf")
      ->required()
      ->check(CLI::IsMember({"gdgnc", "er", "bf"}));
  generate_cmd->add_option("--nodes", generate_cfg.nodes, "Node count");
  generate_cmd->add_option("--iterations", generate_cfg.iterations,
                           "Iteration count (bf only)");
  generate_cmd->add_option("--p", generate_cfg.p,
                           "GNC-attach probability (gdgnc)");
  generate_cmd->add_option("--q", generate_cfg.q,
                           "Double-attach probability (gdgnc)");
  generate_cmd->add_option("--edge-prob", generate_cfg.edge_prob,
                           "Edge probability (er)");
  generate_cmd->add_option("--create-prob", generate_cfg.create_prob,
                           "Node creation probability (bf)");
  generate_cmd->add_option("--transfer-prob", generate_cfg.transfer_prob,
                           "Edge transfer probability (bf)");
  generate_cmd->add_option("--seed", generate_cfg.seed, "Random seed");
  generate_cmd->add_option("--out", generate_cfg.out_path, "Output edge list")
      ->required();

  AnalyzeConfig analyze_cfg;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Report node count, edge count, and density of a graph");
  analyze_cmd->add_option("graph", analyze_cfg.input, "Edge-list file")
      ->required();
  add_format_option(analyze_cmd, analyze_cfg.format);
  analyze_cmd->add_option("--out", analyze_cfg.out_path,
                          "Write the report here instead of stdout");
  analyze_cmd->add_option(
      "--dist-dir", analyze_cfg.dist_dir,
      "Also write in/out x cdf/icd distribution CSVs to this directory");
  analyze_cmd
      ->add_option("--dist-mode", analyze_cfg.dist_mode,
                   "Distribution value mode (proportion, count)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, depgraph::DistMode>{
              {"proportion", depgraph::DistMode::proportion},
              {"count", depgraph::DistMode::count}},
          CLI::ignore_case));

  FilterEndoConfig filter_cfg;
  auto* filter_cmd = app.add_subcommand(
      "filter-endo",
      "Keep only application nodes and the edges between them");
  filter_cmd->add_option("graph", filter_cfg.input, "Edge-list file")
      ->required();
  filter_cmd
      ->add_option("--app-prefixes", filter_cfg.prefixes_path,
                   "File with one application-id prefix per line")
      ->required();
  filter_cmd->add_option("--out", filter_cfg.out_path, "Output edge list")
      ->required();

  CompareConfig compare_cfg;
  auto* compare_cmd = app.add_subcommand(
      "compare",
      "Two-sample KS tests between two graphs' degree distributions");
  compare_cmd->add_option("graph_a", compare_cfg.graph_a, "First edge list")
      ->required();
  compare_cmd->add_option("graph_b", compare_cfg.graph_b, "Second edge list")
      ->required();
  compare_cmd->add_option("--alpha", compare_cfg.alpha,
                          "Confidence level (default 0.01)");
  add_format_option(compare_cmd, compare_cfg.format);
  compare_cmd->add_option("--out", compare_cfg.out_path,
                          "Write the result here instead of stdout");

  FitConfig fit_cfg;
  auto* fit_cmd = app.add_subcommand(
      "fit", "Grid-search model parameters against a real graph");
  fit_cmd->add_option("graph", fit_cfg.input, "Edge-list file")->required();
  fit_cmd->add_option("--model", fit_cfg.model, "Model: gdgnc or bf")
      ->check(CLI::IsMember({"gdgnc", "bf"}));
  auto* p_min_opt =
      fit_cmd->add_option("--p-min", fit_cfg.p_min, "Grid lower bound for p");
  fit_cmd->add_option("--p-max", fit_cfg.p_max, "Grid upper bound for p");
  fit_cmd->add_option("--p-step", fit_cfg.p_step, "Grid step for p");
  fit_cmd->add_option("--q-min", fit_cfg.q_min, "Grid lower bound for q");
  fit_cmd->add_option("--q-max", fit_cfg.q_max, "Grid upper bound for q");
  fit_cmd->add_option("--q-step", fit_cfg.q_step, "Grid step for q");
  fit_cmd->add_option("--replicates", fit_cfg.replicates,
                      "Graphs generated per grid cell (default 30)");
  fit_cmd->add_option("--seed", fit_cfg.seed, "Base seed");
  fit_cmd
      ->add_option("--objective", fit_cfg.objective,
                   "Cell objective: median or min delta")
      ->check(CLI::IsMember({"median", "min"}));
  fit_cmd->add_flag("--refine", fit_cfg.refine,
                    "Run a second, finer pass around the best cell");
  fit_cmd->add_option("--refine-step", fit_cfg.refine_step,
                      "Step of the refinement pass (default 0.01)");
  fit_cmd->add_option("--threads", fit_cfg.threads,
                      "Worker threads (default: all cores)");
  fit_cmd->add_option("--out", fit_cfg.out_path, "Write the JSON report here");
  fit_cmd->add_option("--cells-csv", fit_cfg.cells_csv,
                      "Write per-cell statistics as CSV here");
  add_format_option(fit_cmd, fit_cfg.format);

  EvaluateConfig evaluate_cfg;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate",
      "Delta statistics of a fixed-parameter model against a real graph");
  evaluate_cmd->add_option("graph", evaluate_cfg.input, "Edge-list file")
      ->required();
  evaluate_cmd
      ->add_option("--model", evaluate_cfg.params.model,
                   "Model: gdgnc, er, or bf")
      ->required()
      ->check(CLI::IsMember({"gdgnc", "er", "bf"}));
  evaluate_cmd->add_option("--p", evaluate_cfg.params.p, "gdgnc p");
  evaluate_cmd->add_option("--q", evaluate_cfg.params.q, "gdgnc q");
  evaluate_cmd->add_option(
      "--edge-prob", evaluate_cfg.params.edge_prob,
      "er edge probability (default: the real graph's density)");
  evaluate_cmd->add_option("--create-prob", evaluate_cfg.params.create_prob,
                           "bf creation probability");
  evaluate_cmd->add_option("--transfer-prob",
                           evaluate_cfg.params.transfer_prob,
                           "bf transfer probability");
  evaluate_cmd->add_option("--nodes", evaluate_cfg.nodes,
                           "Synthetic node count (default: match the graph)");
  evaluate_cmd->add_option("--replicates", evaluate_cfg.replicates,
                           "Replicates (default 30)");
  evaluate_cmd->add_option("--seed", evaluate_cfg.seed, "Base seed");
  evaluate_cmd->add_option("--threads", evaluate_cfg.threads,
                           "Worker threads");
  add_format_option(evaluate_cmd, evaluate_cfg.format);
  evaluate_cmd->add_option("--out", evaluate_cfg.out_path,
                           "Write the result here instead of stdout");

  CompareModelsConfig cm_cfg;
  auto* cm_cmd = app.add_subcommand(
      "compare-models",
      "Mann-Whitney comparison of two models' delta populations");
  cm_cmd->add_option("graph", cm_cfg.input, "Edge-list file")->required();
  cm_cmd->add_option("--model-a", cm_cfg.params_a.model, "First model")
      ->required()
      ->check(CLI::IsMember({"gdgnc", "er", "bf"}));
  cm_cmd->add_option("--p-a", cm_cfg.params_a.p, "gdgnc p (model a)");
  cm_cmd->add_option("--q-a", cm_cfg.params_a.q, "gdgnc q (model a)");
  cm_cmd->add_option("--edge-prob-a", cm_cfg.params_a.edge_prob,
                     "er edge probability (model a)");
  cm_cmd->add_option("--create-prob-a", cm_cfg.params_a.create_prob,
                     "bf creation probability (model a)");
  cm_cmd->add_option("--transfer-prob-a", cm_cfg.params_a.transfer_prob,
                     "bf transfer probability (model a)");
  cm_cmd->add_option("--model-b", cm_cfg.params_b.model, "Second model")
      ->required()
      ->check(CLI::IsMember({"gdgnc", "er", "bf"}));
  cm_cmd->add_option("--p-b", cm_cfg.params_b.p, "gdgnc p (model b)");
  cm_cmd->add_option("--q-b", cm_cfg.params_b.q, "gdgnc q (model b)");
  cm_cmd->add_option("--edge-prob-b", cm_cfg.params_b.edge_prob,
                     "er edge probability (model b)");
  cm_cmd->add_option("--create-prob-b", cm_cfg.params_b.create_prob,
                     "bf creation probability (model b)");
  cm_cmd->add_option("--transfer-prob-b", cm_cfg.params_b.transfer_prob,
                     "bf transfer probability (model b)");
  cm_cmd->add_option("--nodes", cm_cfg.nodes,
                     "Synthetic node count (default: match the graph)");
  cm_cmd->add_option("--replicates", cm_cfg.replicates,
                     "Replicates per model (default 30)");
  cm_cmd->add_option("--alpha", cm_cfg.alpha,
                     "Confidence level (default 0.05)");
  cm_cmd->add_option("--seed", cm_cfg.seed, "Base seed");
  cm_cmd->add_option("--threads", cm_cfg.threads, "Worker threads");
  add_format_option(cm_cmd, cm_cfg.format);
  cm_cmd->add_option("--out", cm_cfg.out_path,
                     "Write the result here instead of stdout");

  PairwiseConfig pairwise_cfg;
  auto* pairwise_cmd = app.add_subcommand(
      "pairwise-ks",
      "KS tests over every pair of graphs in a directory");
  pairwise_cmd
      ->add_option("directory", pairwise_cfg.directory,
                   "Directory of edge-list files")
      ->required();
  pairwise_cmd->add_option("--alpha", pairwise_cfg.alpha,
                           "Confidence level (default 0.01)");
  pairwise_cmd->add_option("--suffix", pairwise_cfg.suffix,
                           "File suffix to load (default .edges)");
  pairwise_cmd->add_option("--pairs-csv", pairwise_cfg.pairs_csv,
                           "Write one CSV row per test here");
  add_format_option(pairwise_cmd, pairwise_cfg.format);
  pairwise_cmd->add_option("--out", pairwise_cfg.out_path,
                           "Write the summary here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  fit_cfg.p_min_given = p_min_opt->count() > 0;

  try {
    if (generate_cmd->parsed()) return run_generate(generate_cfg);
    if (analyze_cmd->parsed()) return run_analyze(analyze_cfg);
    if (filter_cmd->parsed()) return run_filter_endo(filter_cfg);
    if (compare_cmd->parsed()) return run_compare(compare_cfg);
    if (fit_cmd->parsed()) return run_fit(fit_cfg);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate_cfg);
    if (cm_cmd->parsed()) return run_compare_models(cm_cfg);
    if (pairwise_cmd->parsed()) return run_pairwise_ks(pairwise_cfg);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const depgraph::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const depgraph::EdgeListParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
