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
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "depgraph/degree.hpp"
#include "depgraph/graph.hpp"

namespace depgraph {

/// Two-sample Kolmogorov-Smirnov test outcome at confidence level `alpha`.
struct KsResult {
  double statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double alpha = 0.0;
  double critical_value = 0.0;
  bool reject_h0 = false;
};

/// KS distances of a real/synthetic graph pair in both directions, and
/// their maximum.
struct DeltaResult {
  double k_in = 0.0;
  double k_out = 0.0;
  double delta = 0.0;
};

/// Mann-Whitney U test outcome. `u_statistic` is the U of the first sample.
struct MwuResult {
  double u_statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p_value = 1.0;
  double alpha = 0.0;
  bool reject_h0 = false;
};

/// KS distance between two empirical degree distributions given as sparse
/// degree -> count maps: sup over the union of observed degrees of
/// |CDF_a(d) - CDF_b(d)|. The union grid contains every step point of both
/// step functions, so the supremum is attained exactly.
inline double ks_statistic_from_counts(
    const std::map<std::uint32_t, std::uint64_t>& a, std::uint64_t total_a,
    const std::map<std::uint32_t, std::uint64_t>& b, std::uint64_t total_b) {
  if (total_a == 0 || a.empty() || total_b == 0 || b.empty())
    throw std::invalid_argument("ks_statistic: empty distribution");
  auto it_a = a.begin();
  auto it_b = b.begin();
  std::uint64_t cum_a = 0;
  std::uint64_t cum_b = 0;
  double sup = 0.0;
  while (it_a != a.end() || it_b != b.end()) {
    std::uint32_t d;
    if (it_a == a.end())
      d = it_b->first;
    else if (it_b == b.end())
      d = it_a->first;
    else
      d = std::min(it_a->first, it_b->first);
    if (it_a != a.end() && it_a->first == d) cum_a += (it_a++)->second;
    if (it_b != b.end() && it_b->first == d) cum_b += (it_b++)->second;
    const double diff =
        std::fabs(static_cast<double>(cum_a) / static_cast<double>(total_a) -
                  static_cast<double>(cum_b) / static_cast<double>(total_b));
    sup = std::max(sup, diff);
  }
  return sup;
}

/// KS distance between two degree views of the same direction.
inline double ks_statistic(const DegreeView& a, const DegreeView& b) {
  if (a.direction != b.direction)
    throw std::invalid_argument("ks_statistic: direction mismatch");
  return ks_statistic_from_counts(a.counts, a.total_nodes, b.counts,
                                  b.total_nodes);
}

/// Scale factor c(alpha) of the asymptotic two-sample KS critical value,
/// sqrt(-ln(alpha/2) / 2); c(0.01) = 1.628, c(0.05) = 1.358.
inline double ks_critical_scale(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

/// Two-sample KS test on count maps. Sample sizes are the node totals (each
/// node contributes its degree once); the critical value is the asymptotic
/// c(alpha) * sqrt((n1 + n2) / (n1 * n2)). Ties in the discrete degree data
/// make the test conservative; no correction is applied.
inline KsResult ks_two_sample_test_from_counts(
    const std::map<std::uint32_t, std::uint64_t>& a, std::uint64_t total_a,
    const std::map<std::uint32_t, std::uint64_t>& b, std::uint64_t total_b,
    double alpha) {
  KsResult result;
  result.statistic = ks_statistic_from_counts(a, total_a, b, total_b);
  result.n1 = total_a;
  result.n2 = total_b;
  result.alpha = alpha;
  const double n1 = static_cast<double>(total_a);
  const double n2 = static_cast<double>(total_b);
  result.critical_value =
      ks_critical_scale(alpha) * std::sqrt((n1 + n2) / (n1 * n2));
  result.reject_h0 = result.statistic > result.critical_value;
  return result;
}

/// Two-sample KS test on degree views of the same direction.
inline KsResult ks_two_sample_test(const DegreeView& a, const DegreeView& b,
                                   double alpha) {
  if (a.direction != b.direction)
    throw std::invalid_argument("ks_two_sample_test: direction mismatch");
  return ks_two_sample_test_from_counts(a.counts, a.total_nodes, b.counts,
                                        b.total_nodes, alpha);
}

/// Fitness distance between a real and a synthetic graph: the larger of the
/// two KS distances taken on the in-degree and out-degree distributions.
template <class NodeIdA, class NodeIdB>
DeltaResult delta(const DependencyGraph<NodeIdA>& real,
                  const DependencyGraph<NodeIdB>& synthetic) {
  if (real.node_count() == 0 || synthetic.node_count() == 0)
    throw std::invalid_argument("delta: empty graph");
  DeltaResult result;
  result.k_in = ks_statistic(degree_view(real, Direction::in),
                             degree_view(synthetic, Direction::in));
  result.k_out = ks_statistic(degree_view(real, Direction::out),
                              degree_view(synthetic, Direction::out));
  result.delta = std::max(result.k_in, result.k_out);
  return result;
}

/// Same distance computed against precomputed views of the real graph;
/// avoids re-tallying the real side when scoring many synthetic graphs.
template <class NodeId>
DeltaResult delta_against_views(const DegreeView& real_in,
                                const DegreeView& real_out,
                                const DependencyGraph<NodeId>& synthetic) {
  if (synthetic.node_count() == 0)
    throw std::invalid_argument("delta: empty graph");
  DeltaResult result;
  result.k_in =
      ks_statistic(real_in, degree_view(synthetic, Direction::in));
  result.k_out =
      ks_statistic(real_out, degree_view(synthetic, Direction::out));
  result.delta = std::max(result.k_in, result.k_out);
  return result;
}

namespace detail {

/// Midranks of the pooled sample, doubled so they stay integers, plus the
/// tie term sum(t^3 - t) over tie groups.
struct PooledRanks {
  std::vector<std::int64_t> doubled_ranks;  // aligned with the pooled order
  double tie_sum = 0.0;
};

inline PooledRanks pooled_midranks(const std::vector<double>& pooled_sorted) {
  PooledRanks out;
  out.doubled_ranks.resize(pooled_sorted.size());
  std::size_t i = 0;
  while (i < pooled_sorted.size()) {
    std::size_t j = i;
    while (j + 1 < pooled_sorted.size() &&
           pooled_sorted[j + 1] == pooled_sorted[i])
      ++j;
    // Ranks i+1 .. j+1 share the midrank (i + j + 2) / 2.
    const std::int64_t doubled =
        static_cast<std::int64_t>(i) + static_cast<std::int64_t>(j) + 2;
    for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[k] = doubled;
    const double t = static_cast<double>(j - i + 1);
    out.tie_sum += t * t * t - t;
    i = j + 1;
  }
  return out;
}

/// Exact two-sided p-value: the probability, over all equally likely
/// assignments of the pooled values to the two groups, that |U - n1*n2/2|
/// is at least the observed deviation. Counted by dynamic programming over
/// subset size and doubled-rank sum, in exact integer terms.
inline double mwu_exact_p(const std::vector<std::int64_t>& doubled_ranks,
                          std::size_t n1, std::int64_t doubled_u1) {
  const std::size_t n = doubled_ranks.size();
  const std::size_t n2 = n - n1;
  std::int64_t total = 0;
  for (std::int64_t r : doubled_ranks) total += r;
  // ways[k][s]: subsets of size k with doubled-rank sum s.
  std::vector<std::vector<double>> ways(
      n1 + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t item = 0; item < n; ++item) {
    const auto r = static_cast<std::size_t>(doubled_ranks[item]);
    const std::size_t k_hi = std::min(n1, item + 1);
    for (std::size_t k = k_hi; k >= 1; --k) {
      auto& row = ways[k];
      const auto& prev = ways[k - 1];
      for (std::size_t s = static_cast<std::size_t>(total); s >= r; --s)
        row[s] += prev[s - r];
    }
  }
  const auto doubled_mean =
      static_cast<std::int64_t>(n1) * static_cast<std::int64_t>(n2);
  const std::int64_t observed_dev = std::abs(doubled_u1 - doubled_mean);
  const std::int64_t rank_offset =
      static_cast<std::int64_t>(n1) * (static_cast<std::int64_t>(n1) + 1);
  double favourable = 0.0;
  double all = 0.0;
  for (std::size_t s = 0; s <= static_cast<std::size_t>(total); ++s) {
    const double count = ways[n1][s];
    if (count == 0.0) continue;
    all += count;
    const std::int64_t doubled_u =
        static_cast<std::int64_t>(s) - rank_offset;
    if (std::abs(doubled_u - doubled_mean) >= observed_dev)
      favourable += count;
  }
  return favourable / all;
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace detail

/// Two-sided Mann-Whitney U test.
///
/// U is computed by rank sums with midrank tie handling. The p-value uses
/// the exact permutation distribution unless both samples have at least 8
/// observations, in which case the normal approximation with tie correction
/// and a 0.5 continuity correction is used. When the pooled sample has no
/// variation the p-value is 1.
inline MwuResult mann_whitney_u(std::span<const double> xs,
                                std::span<const double> ys, double alpha) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("mann_whitney_u: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");

  const std::size_t n1 = xs.size();
  const std::size_t n2 = ys.size();
  const std::size_t n = n1 + n2;

  // Pool, sort, and remember which group each pooled value came from.
  std::vector<std::pair<double, bool>> pooled;  // (value, belongs to xs)
  pooled.reserve(n);
  for (double x : xs) pooled.emplace_back(x, true);
  for (double y : ys) pooled.emplace_back(y, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = pooled[i].first;
  const detail::PooledRanks ranks = detail::pooled_midranks(values);

  std::int64_t doubled_r1 = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (pooled[i].second) doubled_r1 += ranks.doubled_ranks[i];
  const std::int64_t rank_offset =
      static_cast<std::int64_t>(n1) * (static_cast<std::int64_t>(n1) + 1);
  const std::int64_t doubled_u1 = doubled_r1 - rank_offset;

  MwuResult result;
  result.n1 = n1;
  result.n2 = n2;
  result.alpha = alpha;
  result.u_statistic = static_cast<double>(doubled_u1) / 2.0;

  const double nn = static_cast<double>(n1) * static_cast<double>(n2);
  if (n1 >= 8 && n2 >= 8) {
    const double tie_correction =
        ranks.tie_sum / (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
    const double variance =
        nn / 12.0 * (static_cast<double>(n) + 1.0 - tie_correction);
    if (variance <= 0.0) {
      result.p_value = 1.0;
    } else {
      const double deviation =
          std::fabs(result.u_statistic - nn / 2.0) - 0.5;
      const double z = std::max(deviation, 0.0) / std::sqrt(variance);
      result.p_value = std::min(1.0, 2.0 * detail::normal_sf(z));
    }
  } else {
    result.p_value = detail::mwu_exact_p(ranks.doubled_ranks, n1, doubled_u1);
  }
  result.reject_h0 = result.p_value < alpha;
  return result;
}

}  // namespace depgraph
