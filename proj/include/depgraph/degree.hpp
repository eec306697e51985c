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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "depgraph/graph.hpp"

namespace depgraph {

enum class Direction { in, out };

inline const char* to_string(Direction d) noexcept {
  return d == Direction::in ? "in" : "out";
}

/// Sparse degree distribution of one graph in one direction: how many nodes
/// have each observed degree value. Isolated nodes contribute to degree 0.
struct DegreeView {
  Direction direction = Direction::in;
  std::map<std::uint32_t, std::uint64_t> counts;
  std::uint64_t total_nodes = 0;
};

/// Tallies the in- or out-degree of every node of `g`.
template <class NodeId>
DegreeView degree_view(const DependencyGraph<NodeId>& g, Direction direction) {
  DegreeView view;
  view.direction = direction;
  view.total_nodes = g.node_count();
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const std::size_t d = direction == Direction::in ? g.in_degree(i)
                                                     : g.out_degree(i);
    ++view.counts[static_cast<std::uint32_t>(d)];
  }
  return view;
}

namespace detail {
inline void require_nonempty(const DegreeView& v, const char* what) {
  if (v.total_nodes == 0 || v.counts.empty())
    throw std::invalid_argument(std::string(what) + ": empty distribution");
}
}  // namespace detail

/// Cumulative distribution over observed degrees: for each degree d, the
/// proportion of nodes with degree <= d. Monotone nondecreasing, final
/// entry exactly 1.
inline std::vector<std::pair<std::uint32_t, double>> to_cdf(
    const DegreeView& v) {
  detail::require_nonempty(v, "to_cdf");
  std::vector<std::pair<std::uint32_t, double>> cdf;
  cdf.reserve(v.counts.size());
  std::uint64_t cumulative = 0;
  for (const auto& [degree, count] : v.counts) {
    cumulative += count;
    cdf.emplace_back(degree, static_cast<double>(cumulative) /
                                 static_cast<double>(v.total_nodes));
  }
  return cdf;
}

/// Inverse cumulative distribution: for each observed degree d, the
/// proportion of nodes with degree >= d. Monotone nonincreasing, first
/// entry exactly 1.
inline std::vector<std::pair<std::uint32_t, double>> to_icd(
    const DegreeView& v) {
  detail::require_nonempty(v, "to_icd");
  std::vector<std::pair<std::uint32_t, double>> icd;
  icd.reserve(v.counts.size());
  std::uint64_t remaining = v.total_nodes;
  for (const auto& [degree, count] : v.counts) {
    icd.emplace_back(degree, static_cast<double>(remaining) /
                                 static_cast<double>(v.total_nodes));
    remaining -= count;
  }
  return icd;
}

/// Count-valued CDF: number of nodes with degree <= d.
inline std::vector<std::pair<std::uint32_t, std::uint64_t>> to_cdf_counts(
    const DegreeView& v) {
  detail::require_nonempty(v, "to_cdf_counts");
  std::vector<std::pair<std::uint32_t, std::uint64_t>> cdf;
  cdf.reserve(v.counts.size());
  std::uint64_t cumulative = 0;
  for (const auto& [degree, count] : v.counts) {
    cumulative += count;
    cdf.emplace_back(degree, cumulative);
  }
  return cdf;
}

/// Count-valued ICD: number of nodes with degree >= d, the form used for
/// log-log degree plots.
inline std::vector<std::pair<std::uint32_t, std::uint64_t>> to_icd_counts(
    const DegreeView& v) {
  detail::require_nonempty(v, "to_icd_counts");
  std::vector<std::pair<std::uint32_t, std::uint64_t>> icd;
  icd.reserve(v.counts.size());
  std::uint64_t remaining = v.total_nodes;
  for (const auto& [degree, count] : v.counts) {
    icd.emplace_back(degree, remaining);
    remaining -= count;
  }
  return icd;
}

}  // namespace depgraph
