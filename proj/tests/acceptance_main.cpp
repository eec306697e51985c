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

// Acceptance suite: runs every release criterion and prints one line per
// criterion. Usage: acceptance [path-to-depgraph-cli]

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "depgraph/degree.hpp"
#include "depgraph/edge_list.hpp"
#include "depgraph/fitting.hpp"
#include "depgraph/generators.hpp"
#include "depgraph/graph.hpp"
#include "depgraph/random.hpp"
#include "depgraph/stats.hpp"

namespace {

namespace fs = std::filesystem;
using namespace depgraph;

struct Criterion {
  int number;
  std::string name;
  std::function<bool(std::string&)> check;
};

std::string cli_path;
fs::path work_dir;

int run_cli(const std::string& args) {
  const std::string command =
      cli_path + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }
double trunc3(double v) { return std::trunc(v * 1000.0) / 1000.0; }

// 1. Density formula against published (nodes, edges, density) rows. The
// published table mixes rounding conventions, so a value is accepted when
// either rounding or truncation at three decimals reproduces it.
bool check_density_table(std::string& detail) {
  struct Row {
    std::size_t n, e;
    double published;
  };
  const std::vector<Row> rows{
      {1252, 5763, 0.004}, {90, 328, 0.040}, {4633, 18493, 0.001}};
  for (const Row& row : rows) {
    IndexedGraph g;
    g.reserve_nodes(row.n);
    for (std::uint32_t i = 0; i < row.n; ++i) g.add_node(i);
    std::size_t added = 0;
    for (std::uint32_t a = 0; a < row.n && added < row.e; ++a)
      for (std::uint32_t b = 0; b < row.n && added < row.e; ++b) {
        if (a == b) continue;
        g.add_edge(a, b);
        ++added;
      }
    const double gamma = density(g);
    const bool matches = round3(gamma) == row.published ||
                         trunc3(gamma) == row.published;
    if (!matches) {
      detail = "n=" + std::to_string(row.n) +
               ": gamma=" + std::to_string(gamma) + " vs published " +
               std::to_string(row.published);
      return false;
    }
  }
  detail = "ant/jtds/vuze sizes reproduce the published densities";
  return true;
}

// 2. p=1, q=0 reduces to classic GNC: out-neighborhood(i) == {j} + succ(j)
// snapshot, exactly one sink, for 100 seeds at n=200.
bool check_gnc_reduction(std::string& detail) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GdGncTrace trace;
    const IndexedGraph g = generate_gdgnc({200, 1.0, 0.0, seed}, &trace);
    std::size_t sinks = 0;
    for (NodeIndex i = 0; i < g.node_count(); ++i)
      if (g.out_degree(i) == 0) ++sinks;
    if (sinks != 1) {
      detail = "seed " + std::to_string(seed) + ": " +
               std::to_string(sinks) + " sinks";
      return false;
    }
    for (const auto& record : trace) {
      if (record.node == 0) continue;
      if (!record.gnc_branch || !record.first_attach ||
          record.second_attach) {
        detail = "seed " + std::to_string(seed) + ": unexpected branch";
        return false;
      }
      std::set<NodeIndex> expected(
          record.first_attach->successor_snapshot.begin(),
          record.first_attach->successor_snapshot.end());
      expected.insert(record.first_attach->target);
      const auto& succ = g.successors(record.node);
      if (std::set<NodeIndex>(succ.begin(), succ.end()) != expected) {
        detail = "seed " + std::to_string(seed) + ": node " +
                 std::to_string(record.node) + " neighborhood mismatch";
        return false;
      }
    }
  }
  detail = "100 seeds, n=200: neighborhoods match, single sink";
  return true;
}

// 3. p=0 degenerates to n-1 reverse edges with unit in-degrees.
bool check_p_zero(std::string& detail) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const IndexedGraph g = generate_gdgnc({200, 0.0, 0.5, seed});
    if (g.edge_count() != 199) {
      detail = "seed " + std::to_string(seed) + ": " +
               std::to_string(g.edge_count()) + " edges";
      return false;
    }
    if (g.in_degree(0) != 0) {
      detail = "seed " + std::to_string(seed) + ": node 0 has in-edges";
      return false;
    }
    for (NodeIndex i = 1; i < g.node_count(); ++i)
      if (g.in_degree(i) != 1) {
        detail = "seed " + std::to_string(seed) + ": node " +
                 std::to_string(i) + " in-degree " +
                 std::to_string(g.in_degree(i));
        return false;
      }
  }
  detail = "100 seeds, n=200: exactly n-1 edges, unit in-degrees";
  return true;
}

// 4. Erdos-Renyi calibration: mean density near edge_prob, every edge count
// within four binomial standard deviations.
bool check_er_calibration(std::string& detail) {
  const double trials = 500.0 * 499.0;
  const double p = 0.01;
  const double mean = trials * p;
  const double sd = std::sqrt(trials * p * (1.0 - p));
  double density_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const IndexedGraph g = generate_er({500, p, seed});
    const auto edges = static_cast<double>(g.edge_count());
    if (std::fabs(edges - mean) > 4.0 * sd) {
      detail = "seed " + std::to_string(seed) + ": |E|=" +
               std::to_string(g.edge_count()) + " outside 4 sd of " +
               std::to_string(mean);
      return false;
    }
    density_sum += density(g);
  }
  const double mean_density = density_sum / 30.0;
  detail = "mean density " + std::to_string(mean_density) + " (target 0.01)";
  return std::fabs(mean_density - p) <= 0.1 * p;
}

// 5. KS statistic equals a dense-grid brute force exactly on 1000 random
// pairs of small degree views.
bool check_ks_oracle(std::string& detail) {
  std::uint64_t state = 0xACCE55ED;
  const auto next = [&state](std::uint64_t bound) {
    return splitmix64_next(state) % bound;
  };
  const auto random_view = [&] {
    DegreeView v;
    v.direction = Direction::out;
    const std::uint64_t levels = 1 + next(6);
    for (std::uint64_t i = 0; i < levels; ++i)
      v.counts[static_cast<std::uint32_t>(next(13))] += 1 + next(9);
    for (const auto& [d, c] : v.counts) v.total_nodes += c;
    return v;
  };
  const auto brute_force = [](const DegreeView& a, const DegreeView& b) {
    const std::uint32_t max_degree =
        std::max(a.counts.rbegin()->first, b.counts.rbegin()->first);
    std::uint64_t cum_a = 0, cum_b = 0;
    double sup = 0.0;
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
      if (auto it = a.counts.find(d); it != a.counts.end())
        cum_a += it->second;
      if (auto it = b.counts.find(d); it != b.counts.end())
        cum_b += it->second;
      sup = std::max(
          sup, std::fabs(static_cast<double>(cum_a) /
                             static_cast<double>(a.total_nodes) -
                         static_cast<double>(cum_b) /
                             static_cast<double>(b.total_nodes)));
    }
    return sup;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const DegreeView a = random_view();
    const DegreeView b = random_view();
    if (ks_statistic(a, b) != brute_force(a, b)) {
      detail = "mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "1000 random view pairs match the dense-grid supremum exactly";
  return true;
}

// 6. Exact Mann-Whitney p-values match full rank-permutation enumeration
// for every sample-size split with n1+n2 <= 10.
bool check_mwu_exact(std::string& detail) {
  std::uint64_t state = 0x3141592653589793ULL;
  const auto next = [&state](std::uint64_t bound) {
    return splitmix64_next(state) % bound;
  };

  const auto oracle = [](const std::vector<double>& xs,
                         const std::vector<double>& ys) {
    std::vector<double> pooled(xs);
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    const std::size_t n = pooled.size();
    const std::size_t n1 = xs.size();
    const auto doubled_u = [&](const std::vector<bool>& in_group) {
      std::int64_t u2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_group[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (in_group[j]) continue;
          if (pooled[i] > pooled[j])
            u2 += 2;
          else if (pooled[i] == pooled[j])
            u2 += 1;
        }
      }
      return u2;
    };
    std::vector<bool> observed(n, false);
    for (std::size_t i = 0; i < n1; ++i) observed[i] = true;
    const auto mean2 =
        static_cast<std::int64_t>(n1) * static_cast<std::int64_t>(n - n1);
    const std::int64_t dev = std::abs(doubled_u(observed) - mean2);
    std::uint64_t favourable = 0, total = 0;
    std::vector<bool> group(n, false);
    const std::function<void(std::size_t, std::size_t)> recurse =
        [&](std::size_t start, std::size_t chosen) {
          if (chosen == n1) {
            ++total;
            if (std::abs(doubled_u(group) - mean2) >= dev) ++favourable;
            return;
          }
          for (std::size_t i = start; i + (n1 - chosen) <= n; ++i) {
            group[i] = true;
            recurse(i + 1, chosen + 1);
            group[i] = false;
          }
        };
    recurse(0, 0);
    return static_cast<double>(favourable) / static_cast<double>(total);
  };

  for (std::size_t n1 = 1; n1 <= 9; ++n1)
    for (std::size_t n2 = 1; n1 + n2 <= 10; ++n2)
      for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> xs(n1), ys(n2);
        for (auto& x : xs) x = static_cast<double>(next(5));
        for (auto& y : ys) y = static_cast<double>(next(5));
        const MwuResult r = mann_whitney_u(xs, ys, 0.05);
        const double expected = oracle(xs, ys);
        if (std::fabs(r.p_value - expected) > 1e-12) {
          detail = "n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                   ": p=" + std::to_string(r.p_value) + " vs " +
                   std::to_string(expected);
          return false;
        }
      }
  detail = "all splits with n1+n2 <= 10 match enumeration to 1e-12";
  return true;
}

// 7. Self-fit recovery: a two-stage grid fit of a GD-GNC graph with known
// parameters lands within +/- 0.10 of the truth in at least 8 of 10 trials.
bool check_self_fit(std::string& detail) {
  const double true_p = 0.75;
  const double true_q = 0.30;
  const IndexedGraph real = generate_gdgnc({800, true_p, true_q, 20260809});
  int hits = 0;
  std::ostringstream bests;
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const TwoStageFitReport staged =
        fit_two_stage(real, FitModel::gdgnc, 7000 + trial);
    const bool hit =
        std::fabs(staged.refined.best_p - true_p) <= 0.10 + 1e-9 &&
        std::fabs(staged.refined.best_q - true_q) <= 0.10 + 1e-9;
    if (hit) ++hits;
    bests << " (" << staged.refined.best_p << "," << staged.refined.best_q
          << ")";
  }
  detail = std::to_string(hits) + "/10 trials within +/-0.10 of (0.75,0.30):" +
           bests.str();
  return hits >= 8;
}

// 8. Model separation: GD-GNC's delta population beats Erdos-Renyi's on the
// same graph, and the Mann-Whitney test confirms the separation.
bool check_model_separation(std::string& detail) {
  const IndexedGraph real = generate_gdgnc({800, 0.75, 0.30, 20260809});
  const ModelSpec gd = GdGncParams{800, 0.75, 0.30, 1001};
  const ModelSpec er = ErParams{800, density(real), 1002};
  const ModelComparison cmp = compare_models(real, gd, er, 30, 0.05);
  detail = "median delta gdgnc=" + std::to_string(cmp.a.delta_median) +
           " er=" + std::to_string(cmp.b.delta_median) +
           " p=" + std::to_string(cmp.mwu.p_value);
  return cmp.a.delta_median < cmp.b.delta_median && cmp.mwu.reject_h0;
}

// 9. In/out asymmetry: the KS test between a graph's own in- and out-degree
// distributions rejects at alpha=0.01 for at least 25 of 30 seeds.
bool check_asymmetry(std::string& detail) {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const IndexedGraph g = generate_gdgnc({2000, 0.8, 0.3, 500 + seed});
    const DegreeView in_view = degree_view(g, Direction::in);
    const DegreeView out_view = degree_view(g, Direction::out);
    const KsResult r = ks_two_sample_test_from_counts(
        in_view.counts, in_view.total_nodes, out_view.counts,
        out_view.total_nodes, 0.01);
    if (r.reject_h0) ++rejections;
  }
  detail = std::to_string(rejections) + "/30 seeds reject at alpha=0.01";
  return rejections >= 25;
}

// 10. End-to-end determinism of the command-line tool: generate and fit
// twice with identical flags and compare bytes.
bool check_cli_determinism(std::string& detail) {
  const fs::path g1 = work_dir / "det1.edges";
  const fs::path g2 = work_dir / "det2.edges";
  const std::string generate_flags =
      "generate --model gdgnc --nodes 300 --p 0.7 --q 0.2 --seed 99 --out ";
  if (run_cli(generate_flags + g1.string()) != 0 ||
      run_cli(generate_flags + g2.string()) != 0) {
    detail = "generate failed";
    return false;
  }
  if (slurp(g1) != slurp(g2)) {
    detail = "generate outputs differ";
    return false;
  }

  const fs::path real = work_dir / "det_real.edges";
  if (run_cli("generate --model gdgnc --nodes 100 --p 0.6 --q 0.2 --seed 8 "
              "--out " +
              real.string()) != 0) {
    detail = "generate for fit failed";
    return false;
  }
  const auto fit_flags = [&](int run) {
    const fs::path report = work_dir / ("report" + std::to_string(run) + ".json");
    const fs::path cells = work_dir / ("cells" + std::to_string(run) + ".csv");
    return "fit " + real.string() +
           " --p-step 0.25 --q-step 0.25 --replicates 5 --seed 4 --out " +
           report.string() + " --cells-csv " + cells.string();
  };
  if (run_cli(fit_flags(1)) != 0 || run_cli(fit_flags(2)) != 0) {
    detail = "fit failed";
    return false;
  }
  if (slurp(work_dir / "report1.json") != slurp(work_dir / "report2.json")) {
    detail = "fit reports differ";
    return false;
  }
  if (slurp(work_dir / "cells1.csv") != slurp(work_dir / "cells2.csv")) {
    detail = "fit cell tables differ";
    return false;
  }
  detail = "generate and fit reproduce byte-identical outputs";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  cli_path = argc > 1 ? argv[1] : "./depgraph";
  work_dir = fs::temp_directory_path() / "depgraph_acceptance";
  fs::create_directories(work_dir);

  const std::vector<Criterion> criteria{
      {1, "density-table-values", check_density_table},
      {2, "gnc-reduction", check_gnc_reduction},
      {3, "p-zero-degeneration", check_p_zero},
      {4, "er-calibration", check_er_calibration},
      {5, "ks-oracle-equivalence", check_ks_oracle},
      {6, "mwu-exact-enumeration", check_mwu_exact},
      {7, "self-fit-recovery", check_self_fit},
      {8, "model-separation", check_model_separation},
      {9, "in-out-asymmetry", check_asymmetry},
      {10, "cli-determinism", check_cli_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.number << " "
              << criterion.name << ": " << detail << "\n"
              << std::flush;
  }

  fs::remove_all(work_dir);
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
