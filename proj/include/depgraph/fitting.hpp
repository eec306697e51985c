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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "depgraph/degree.hpp"
#include "depgraph/generators.hpp"
#include "depgraph/graph.hpp"
#include "depgraph/random.hpp"
#include "depgraph/stats.hpp"

namespace depgraph {

/// Models that can be calibrated against a real graph. Both expose two
/// probability parameters (p, q): GNC-attach and double-attach rates for
/// GD-GNC, creation and transfer rates for the Baxter-Frean-style baseline.
enum class FitModel { gdgnc, baxter_frean };

inline const char* to_string(FitModel m) noexcept {
  return m == FitModel::gdgnc ? "gdgnc" : "baxter_frean";
}

/// Aggregate used to rank grid cells: the median delta over replicates
/// (robust default) or the minimum delta.
enum class FitObjective { median_delta, min_delta };

inline const char* to_string(FitObjective o) noexcept {
  return o == FitObjective::median_delta ? "median_delta" : "min_delta";
}

/// Inclusive parameter grid with fixed steps, plus the replicate count per
/// cell.
struct GridSpec {
  double p_lo = 0.0;
  double p_hi = 1.0;
  double p_step = 0.05;
  double q_lo = 0.0;
  double q_hi = 1.0;
  double q_step = 0.05;
  std::uint32_t replicates = 30;
};

/// Replicate statistics of one grid cell.
struct CellStats {
  double p = 0.0;
  double q = 0.0;
  double delta_min = 0.0;
  double delta_median = 0.0;
  double delta_max = 0.0;
};

/// Outcome of a grid search: every evaluated cell plus the winning one.
struct FitReport {
  FitModel model = FitModel::gdgnc;
  FitObjective objective_mode = FitObjective::median_delta;
  double best_p = 0.0;
  double best_q = 0.0;
  double objective = 0.0;
  std::vector<CellStats> cells;
  std::size_t node_count_used = 0;
  std::uint64_t base_seed = 0;
};

/// Replicate delta statistics of one fixed-parameter model.
struct EvalSummary {
  double delta_min = 0.0;
  double delta_median = 0.0;
  double delta_max = 0.0;
  std::vector<double> deltas;  // one per replicate, in replicate order
};

/// Two fixed-parameter models scored against the same real graph, plus the
/// Mann-Whitney comparison of their delta populations.
struct ModelComparison {
  EvalSummary a;
  EvalSummary b;
  MwuResult mwu;
};

struct FitOptions {
  FitObjective objective = FitObjective::median_delta;
  unsigned threads = 0;  // 0 = hardware concurrency
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(0..count-1) on a small worker pool. Results must be written to
/// pre-sized slots indexed by the argument, which keeps the reduction
/// deterministic regardless of scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::min<std::size_t>(resolve_threads(threads), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline IndexedGraph generate_fit_candidate(FitModel model,
                                           std::uint32_t n_nodes, double p,
                                           double q, std::uint64_t seed) {
  switch (model) {
    case FitModel::gdgnc:
      return generate_gdgnc({n_nodes, p, q, seed});
    case FitModel::baxter_frean:
      return generate_bf_grow({n_nodes, p, q, seed});
  }
  throw std::logic_error("unknown fit model");
}

inline std::vector<double> grid_axis(double lo, double hi, double step,
                                     const char* name) {
  if (step <= 0.0)
    throw std::invalid_argument(std::string(name) + " step must be > 0");
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0))
    throw std::invalid_argument(std::string(name) +
                                " range must satisfy 0 <= lo <= hi <= 1");
  std::vector<double> values;
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    values.push_back(std::min(lo + static_cast<double>(i) * step, hi));
  return values;
}

struct ReplicateStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

inline ReplicateStats summarize(std::vector<double> deltas) {
  std::sort(deltas.begin(), deltas.end());
  ReplicateStats s;
  s.min = deltas.front();
  s.max = deltas.back();
  const std::size_t n = deltas.size();
  s.median = n % 2 == 1 ? deltas[n / 2]
                        : 0.5 * (deltas[n / 2 - 1] + deltas[n / 2]);
  return s;
}

}  // namespace detail

/// Scores `replicates` synthetic graphs against `real`, where replicate k
/// is produced by make_graph(derive_seed(base_seed, k)). Returns the delta
/// list in replicate order together with its min / median / max.
template <class NodeId>
EvalSummary evaluate(
    const DependencyGraph<NodeId>& real,
    const std::function<IndexedGraph(std::uint64_t)>& make_graph,
    std::uint32_t replicates, std::uint64_t base_seed, unsigned threads = 0) {
  if (real.node_count() == 0)
    throw std::invalid_argument("evaluate: empty real graph");
  if (replicates < 1)
    throw std::invalid_argument("evaluate: replicates must be >= 1");
  const DegreeView real_in = degree_view(real, Direction::in);
  const DegreeView real_out = degree_view(real, Direction::out);
  EvalSummary summary;
  summary.deltas.resize(replicates);
  detail::parallel_for(replicates, threads, [&](std::size_t k) {
    const IndexedGraph g = make_graph(derive_seed(base_seed, k));
    summary.deltas[k] = delta_against_views(real_in, real_out, g).delta;
  });
  const auto stats = detail::summarize(summary.deltas);
  summary.delta_min = stats.min;
  summary.delta_median = stats.median;
  summary.delta_max = stats.max;
  return summary;
}

/// Same, for a fully specified generator model. The spec's own seed field
/// is ignored; replicate seeds derive from `base_seed`.
template <class NodeId>
EvalSummary evaluate(const DependencyGraph<NodeId>& real,
                     const ModelSpec& spec, std::uint32_t replicates,
                     std::uint64_t base_seed, unsigned threads = 0) {
  return evaluate(
      real,
      std::function<IndexedGraph(std::uint64_t)>(
          [&spec](std::uint64_t seed) {
            return generate(with_seed(spec, seed));
          }),
      replicates, base_seed, threads);
}

/// Grid-search calibration of `model` against `real`.
///
/// Every cell generates `grid.replicates` graphs with the real graph's node
/// count and records the min / median / max delta. The best cell minimizes
/// the configured objective; ties go to the lexicographically smallest
/// (p, q). Seeds: cell c (in row-major p-then-q order) uses the stream base
/// derive_seed(base_seed, c), and its replicate k uses
/// derive_seed(derive_seed(base_seed, c), k) — fully deterministic and
/// independent of the number of worker threads.
template <class NodeId>
FitReport fit(const DependencyGraph<NodeId>& real, FitModel model,
              const GridSpec& grid, std::uint64_t base_seed,
              const FitOptions& options = {}) {
  if (real.node_count() == 0)
    throw std::invalid_argument("fit: empty real graph");
  if (grid.replicates < 1)
    throw std::invalid_argument("fit: replicates must be >= 1");
  const std::vector<double> ps =
      detail::grid_axis(grid.p_lo, grid.p_hi, grid.p_step, "p");
  const std::vector<double> qs =
      detail::grid_axis(grid.q_lo, grid.q_hi, grid.q_step, "q");
  const auto n_nodes = static_cast<std::uint32_t>(real.node_count());
  const DegreeView real_in = degree_view(real, Direction::in);
  const DegreeView real_out = degree_view(real, Direction::out);

  FitReport report;
  report.model = model;
  report.objective_mode = options.objective;
  report.node_count_used = real.node_count();
  report.base_seed = base_seed;
  report.cells.resize(ps.size() * qs.size());

  std::vector<double> objectives(report.cells.size());
  detail::parallel_for(report.cells.size(), options.threads,
                       [&](std::size_t cell) {
    const double p = ps[cell / qs.size()];
    const double q = qs[cell % qs.size()];
    const std::uint64_t cell_seed = derive_seed(base_seed, cell);
    std::vector<double> deltas(grid.replicates);
    try {
      for (std::uint32_t k = 0; k < grid.replicates; ++k) {
        const IndexedGraph g = detail::generate_fit_candidate(
            model, n_nodes, p, q, derive_seed(cell_seed, k));
        deltas[k] = delta_against_views(real_in, real_out, g).delta;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("fit: cell (p=" + std::to_string(p) +
                               ", q=" + std::to_string(q) + "): " + e.what());
    }
    const auto stats = detail::summarize(std::move(deltas));
    report.cells[cell] = {p, q, stats.min, stats.median, stats.max};
    objectives[cell] = options.objective == FitObjective::median_delta
                           ? stats.median
                           : stats.min;
  });

  std::size_t best = 0;
  for (std::size_t cell = 1; cell < objectives.size(); ++cell)
    if (objectives[cell] < objectives[best]) best = cell;
  report.best_p = report.cells[best].p;
  report.best_q = report.cells[best].q;
  report.objective = objectives[best];
  return report;
}

/// Coarse-then-refined grid search: a full pass with `coarse`, then a
/// second pass at `refine_step` on a one-coarse-step window around the
/// winning cell. The stages use the stream bases derive_seed(base_seed, 0)
/// and derive_seed(base_seed, 1).
struct TwoStageFitReport {
  FitReport coarse;
  FitReport refined;
};

template <class NodeId>
TwoStageFitReport fit_two_stage(const DependencyGraph<NodeId>& real,
                                FitModel model, std::uint64_t base_seed,
                                const GridSpec& coarse = {},
                                double refine_step = 0.01,
                                const FitOptions& options = {}) {
  TwoStageFitReport result;
  result.coarse = fit(real, model, coarse, derive_seed(base_seed, 0), options);

  GridSpec fine = coarse;
  fine.p_step = refine_step;
  fine.q_step = refine_step;
  const double p_floor =
      model == FitModel::baxter_frean ? refine_step : 0.0;
  fine.p_lo = std::max(p_floor, result.coarse.best_p - coarse.p_step);
  fine.p_hi = std::min(1.0, result.coarse.best_p + coarse.p_step);
  fine.q_lo = std::max(0.0, result.coarse.best_q - coarse.q_step);
  fine.q_hi = std::min(1.0, result.coarse.best_q + coarse.q_step);
  result.refined =
      fit(real, model, fine, derive_seed(base_seed, 1), options);
  return result;
}

/// Evaluates two fixed-parameter models against the same real graph and
/// compares their delta populations with the two-sided Mann-Whitney U test.
/// Each spec's own seed field is its replicate base seed.
template <class NodeId>
ModelComparison compare_models(const DependencyGraph<NodeId>& real,
                               const ModelSpec& spec_a,
                               const ModelSpec& spec_b,
                               std::uint32_t replicates, double alpha,
                               unsigned threads = 0) {
  ModelComparison cmp;
  cmp.a = evaluate(real, spec_a, replicates, seed_of(spec_a), threads);
  cmp.b = evaluate(real, spec_b, replicates, seed_of(spec_b), threads);
  cmp.mwu = mann_whitney_u(cmp.a.deltas, cmp.b.deltas, alpha);
  return cmp;
}

}  // namespace depgraph
