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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace depgraph {

/// Dense index of a node inside one graph, assigned in insertion order.
using NodeIndex = std::uint32_t;

/// Result of an attempted edge insertion.
enum class EdgeOutcome { added, duplicate_edge, self_loop };

/// Simple directed graph: no self-loops, no parallel edges.
///
/// Nodes are identified by an opaque `NodeId` (strings for imported graphs,
/// consecutive integers for generated ones) and addressed internally by a
/// dense NodeIndex in insertion order. Edge insertion silently rejects
/// self-loops and duplicates and reports which case occurred, so the class
/// invariants hold for every reachable state:
///   - every edge endpoint is a registered node,
///   - each ordered pair appears at most once,
///   - no edge connects a node to itself,
///   - sum of in-degrees == sum of out-degrees == edge_count().
template <class NodeId>
class DependencyGraph {
 public:
  DependencyGraph() = default;

  void reserve_nodes(std::size_t n) {
    ids_.reserve(n);
    out_.reserve(n);
    in_degree_.reserve(n);
  }

  /// Registers a new node. Throws if the id is already present.
  NodeIndex add_node(const NodeId& id) {
    auto [it, inserted] =
        index_.emplace(id, static_cast<NodeIndex>(ids_.size()));
    if (!inserted) throw std::invalid_argument("add_node: duplicate node id");
    ids_.push_back(id);
    out_.emplace_back();
    in_degree_.push_back(0);
    return it->second;
  }

  /// Returns the index of `id`, registering it first if unknown.
  NodeIndex ensure_node(const NodeId& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    return add_node(id);
  }

  std::optional<NodeIndex> find_node(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeIndex node_index(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node id");
    return it->second;
  }

  /// Inserts the edge (from, to) unless it is a self-loop or already present.
  EdgeOutcome add_edge(NodeIndex from, NodeIndex to) {
    check_index(from);
    check_index(to);
    if (from == to) return EdgeOutcome::self_loop;
    if (!edge_keys_.insert(edge_key(from, to)).second)
      return EdgeOutcome::duplicate_edge;
    out_[from].push_back(to);
    ++in_degree_[to];
    ++edge_count_;
    return EdgeOutcome::added;
  }

  bool has_edge(NodeIndex from, NodeIndex to) const {
    return edge_keys_.contains(edge_key(from, to));
  }

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const NodeId& node_id(NodeIndex i) const { return ids_.at(i); }
  const std::vector<NodeId>& node_ids() const noexcept { return ids_; }

  /// Out-neighbors of node `i`, in edge insertion order.
  const std::vector<NodeIndex>& successors(NodeIndex i) const {
    check_index(i);
    return out_[i];
  }

  std::size_t out_degree(NodeIndex i) const {
    check_index(i);
    return out_[i].size();
  }

  std::size_t in_degree(NodeIndex i) const {
    check_index(i);
    return in_degree_[i];
  }

  /// Visits every edge as (source index, target index), grouped by source in
  /// node insertion order, targets in edge insertion order.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (NodeIndex u = 0; u < ids_.size(); ++u)
      for (NodeIndex v : out_[u]) fn(u, v);
  }

 private:
  static std::uint64_t edge_key(NodeIndex from, NodeIndex to) noexcept {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  void check_index(NodeIndex i) const {
    if (i >= ids_.size()) throw std::out_of_range("node index out of range");
  }

  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::uint32_t> in_degree_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::size_t edge_count_ = 0;
};

/// Imported graphs carry their original identifiers.
using LabeledGraph = DependencyGraph<std::string>;
/// Generated graphs use node ids 0..n-1 in creation order.
using IndexedGraph = DependencyGraph<std::uint32_t>;

/// Proportion of ordered node pairs that are connected:
/// |E| / (|N| * (|N| - 1)). Undefined for fewer than two nodes.
template <class NodeId>
double density(const DependencyGraph<NodeId>& g) {
  const double n = static_cast<double>(g.node_count());
  if (g.node_count() < 2)
    throw std::invalid_argument("density: undefined for fewer than 2 nodes");
  return static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

/// True when both graphs have the same node id set and the same edge set,
/// regardless of insertion order.
template <class NodeId>
bool same_structure(const DependencyGraph<NodeId>& a,
                    const DependencyGraph<NodeId>& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  std::vector<NodeId> ids_a = a.node_ids();
  std::vector<NodeId> ids_b = b.node_ids();
  std::sort(ids_a.begin(), ids_a.end());
  std::sort(ids_b.begin(), ids_b.end());
  if (ids_a != ids_b) return false;
  std::vector<std::pair<NodeId, NodeId>> edges_a, edges_b;
  edges_a.reserve(a.edge_count());
  edges_b.reserve(b.edge_count());
  a.for_each_edge([&](NodeIndex u, NodeIndex v) {
    edges_a.emplace_back(a.node_id(u), a.node_id(v));
  });
  b.for_each_edge([&](NodeIndex u, NodeIndex v) {
    edges_b.emplace_back(b.node_id(u), b.node_id(v));
  });
  std::sort(edges_a.begin(), edges_a.end());
  std::sort(edges_b.begin(), edges_b.end());
  return edges_a == edges_b;
}

/// Splits a graph's nodes into application nodes and library nodes.
///
/// A node is an application node when its identifier matches one of the
/// configured prefixes or is listed explicitly; every other node is a
/// library node.
class NodeClassifier {
 public:
  explicit NodeClassifier(std::vector<std::string> app_prefixes,
                          std::unordered_set<std::string> app_ids = {})
      : app_prefixes_(std::move(app_prefixes)), app_ids_(std::move(app_ids)) {}

  bool is_app(std::string_view id) const {
    if (app_ids_.contains(std::string(id))) return true;
    for (const auto& prefix : app_prefixes_)
      if (id.substr(0, prefix.size()) == prefix) return true;
    return false;
  }

  const std::vector<std::string>& app_prefixes() const noexcept {
    return app_prefixes_;
  }

 private:
  std::vector<std::string> app_prefixes_;
  std::unordered_set<std::string> app_ids_;
};

/// Restricts a graph to its application part: keeps application nodes and
/// the edges between two application nodes, drops everything that touches a
/// library node. Idempotent.
inline LabeledGraph filter_endo(const LabeledGraph& g,
                                const NodeClassifier& classifier) {
  LabeledGraph result;
  std::vector<bool> keep(g.node_count(), false);
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (classifier.is_app(g.node_id(i))) {
      keep[i] = true;
      result.add_node(g.node_id(i));
    }
  }
  g.for_each_edge([&](NodeIndex u, NodeIndex v) {
    if (keep[u] && keep[v])
      result.add_edge(result.node_index(g.node_id(u)),
                      result.node_index(g.node_id(v)));
  });
  return result;
}

}  // namespace depgraph
