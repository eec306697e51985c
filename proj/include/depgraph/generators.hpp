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
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "depgraph/graph.hpp"
#include "depgraph/random.hpp"

namespace depgraph {

/// Parameters of the GD-GNC growth model: `n_nodes` iterations, each adding
/// one node; probability `p` of attaching it with a GNC step (instead of
/// receiving one reverse edge) and probability `q` of repeating the GNC step
/// a second time.
struct GdGncParams {
  std::uint32_t n_nodes = 1;
  double p = 1.0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

/// Erdos-Renyi G(n, p) for directed graphs: every ordered pair (a, b) with
/// a != b is an edge independently with probability `edge_prob`.
struct ErParams {
  std::uint32_t n_nodes = 1;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
};

/// Out-degree preferential-attachment baseline driven by two event rates:
/// node creation and edge transfer. Runs for a fixed number of iterations.
struct BfParams {
  std::uint64_t n_iterations = 0;
  double create_prob = 1.0;
  double transfer_prob = 0.0;
  std::uint64_t seed = 0;
};

/// Same process as BfParams but run until the graph reaches `n_nodes`
/// nodes, which is the form used when fitting against a real graph of known
/// size. Requires create_prob > 0.
struct BfGrowParams {
  std::uint32_t n_nodes = 1;
  double create_prob = 1.0;
  double transfer_prob = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument(std::string(name) +
                                " must be a probability in [0, 1]");
}

inline void validate(const GdGncParams& params) {
  if (params.n_nodes < 1)
    throw std::invalid_argument("n_nodes must be >= 1");
  check_probability(params.p, "p");
  check_probability(params.q, "q");
}

inline void validate(const ErParams& params) {
  if (params.n_nodes < 1)
    throw std::invalid_argument("n_nodes must be >= 1");
  check_probability(params.edge_prob, "edge_prob");
}

inline void validate(const BfParams& params) {
  check_probability(params.create_prob, "create_prob");
  check_probability(params.transfer_prob, "transfer_prob");
}

inline void validate(const BfGrowParams& params) {
  if (params.n_nodes < 1)
    throw std::invalid_argument("n_nodes must be >= 1");
  check_probability(params.create_prob, "create_prob");
  check_probability(params.transfer_prob, "transfer_prob");
  if (params.create_prob == 0.0)
    throw std::invalid_argument(
        "create_prob must be > 0 to grow to a node target");
}

}  // namespace detail

/// What one GNC attachment did: which node was selected, the selected
/// node's successor list as it stood before any insertion, and the edges
/// actually inserted (duplicates are skipped silently). `aborted` is set
/// when the selection hit the caller-supplied forbidden node; an aborted
/// attachment inserts nothing.
struct GncAttachResult {
  NodeIndex target = 0;
  bool aborted = false;
  std::vector<NodeIndex> successor_snapshot;
  std::vector<std::pair<NodeIndex, NodeIndex>> added;
};

/// GNC attachment of `new_node`: selects an existing node j uniformly at
/// random (never `new_node` itself), then inserts the edge (new_node, j)
/// and one edge from `new_node` to every successor of j. Successors are
/// snapshotted before insertion; edges that already exist, and the edge to
/// `new_node` itself, are skipped rather than duplicated.
///
/// When `abort_on_target` is given and the selection lands on that node,
/// the attachment aborts: the random draw is consumed but no edge is added.
template <class NodeId>
GncAttachResult gnc_attach(DependencyGraph<NodeId>& g, NodeIndex new_node,
                           Xoshiro256StarStar& rng,
                           std::optional<NodeIndex> abort_on_target =
                               std::nullopt) {
  const std::size_t n = g.node_count();
  if (new_node >= n)
    throw std::invalid_argument("gnc_attach: new_node is not in the graph");
  if (n < 2)
    throw std::invalid_argument("gnc_attach: no eligible target node");

  GncAttachResult result;
  std::uint64_t pick = rng.uniform_index(n - 1);
  if (pick >= new_node) ++pick;  // skip the new node itself
  result.target = static_cast<NodeIndex>(pick);

  if (abort_on_target && result.target == *abort_on_target) {
    result.aborted = true;
    return result;
  }

  result.successor_snapshot = g.successors(result.target);
  if (g.add_edge(new_node, result.target) == EdgeOutcome::added)
    result.added.emplace_back(new_node, result.target);
  for (NodeIndex succ : result.successor_snapshot) {
    if (succ == new_node) continue;
    if (g.add_edge(new_node, succ) == EdgeOutcome::added)
      result.added.emplace_back(new_node, succ);
  }
  return result;
}

/// Per-iteration record of a GD-GNC run, for inspection and testing.
struct GdGncIterationRecord {
  NodeIndex node = 0;
  bool gnc_branch = false;
  std::optional<GncAttachResult> first_attach;
  std::optional<GncAttachResult> second_attach;
  std::optional<std::pair<NodeIndex, NodeIndex>> reverse_edge;
};

using GdGncTrace = std::vector<GdGncIterationRecord>;

/// Generates a graph with the GD-GNC model.
///
/// Iteration 0 adds a single isolated node. Every later iteration i adds
/// node i and then draws one coin against `p`:
///   - heads: GNC-attach node i; then draw a coin against `q` and, on
///     heads, GNC-attach a second time, aborting if the second selection
///     equals the first;
///   - tails: select an existing node j uniformly at random and add the
///     reverse edge (j, i).
///
/// Node ids are 0..n_nodes-1 in creation order. Deterministic for a fixed
/// seed. When `trace` is non-null, one record per iteration is appended.
inline IndexedGraph generate_gdgnc(const GdGncParams& params,
                                   GdGncTrace* trace = nullptr) {
  detail::validate(params);
  Xoshiro256StarStar rng(params.seed);
  IndexedGraph g;
  g.reserve_nodes(params.n_nodes);

  for (std::uint32_t i = 0; i < params.n_nodes; ++i) {
    g.add_node(i);
    GdGncIterationRecord record;
    record.node = i;
    if (i > 0) {
      if (rng.bernoulli(params.p)) {
        record.gnc_branch = true;
        record.first_attach = gnc_attach(g, i, rng);
        if (rng.bernoulli(params.q))
          record.second_attach =
              gnc_attach(g, i, rng, record.first_attach->target);
      } else {
        const auto j = static_cast<NodeIndex>(rng.uniform_index(i));
        g.add_edge(j, i);
        record.reverse_edge = {j, i};
      }
    }
    if (trace) trace->push_back(std::move(record));
  }
  return g;
}

/// Generates a directed Erdos-Renyi graph. Ordered pairs are visited
/// row-major by source index; each draws one Bernoulli(edge_prob) coin.
inline IndexedGraph generate_er(const ErParams& params) {
  detail::validate(params);
  Xoshiro256StarStar rng(params.seed);
  IndexedGraph g;
  g.reserve_nodes(params.n_nodes);
  for (std::uint32_t i = 0; i < params.n_nodes; ++i) g.add_node(i);
  for (std::uint32_t a = 0; a < params.n_nodes; ++a)
    for (std::uint32_t b = 0; b < params.n_nodes; ++b) {
      if (a == b) continue;
      if (rng.bernoulli(params.edge_prob)) g.add_edge(a, b);
    }
  return g;
}

/// Event counts of one Baxter-Frean-style run.
struct BfTrace {
  std::uint64_t nodes_added = 0;
  std::uint64_t creations_attempted = 0;
  std::uint64_t creations_succeeded = 0;
  std::uint64_t transfers_attempted = 0;
  std::uint64_t transfers_succeeded = 0;
};

namespace detail {

/// Mutable state of the Baxter-Frean-style process. Edges live in a flat
/// array so that the out-degree-biased roulette is O(1): picking uniformly
/// from {all nodes} + {all edge sources} selects node v with probability
/// proportional to out_degree(v) + 1.
struct BfState {
  std::uint32_t n_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::unordered_set<std::uint64_t> edge_keys;

  static std::uint64_t key(std::uint32_t from, std::uint32_t to) noexcept {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  std::uint32_t roulette(Xoshiro256StarStar& rng) const {
    const std::uint64_t pick = rng.uniform_index(n_nodes + edges.size());
    if (pick < n_nodes) return static_cast<std::uint32_t>(pick);
    return edges[pick - n_nodes].first;
  }

  /// One iteration: node-creation coin, one edge-creation attempt, then an
  /// edge-transfer coin. Coins are always drawn; the edge attempts are
  /// skipped without consuming draws when the graph cannot support them.
  void step(double create_prob, double transfer_prob, Xoshiro256StarStar& rng,
            BfTrace* trace) {
    if (rng.bernoulli(create_prob)) {
      ++n_nodes;
      if (trace) ++trace->nodes_added;
    }
    if (n_nodes > 0) {
      if (trace) ++trace->creations_attempted;
      const auto source =
          static_cast<std::uint32_t>(rng.uniform_index(n_nodes));
      const std::uint32_t target = roulette(rng);
      if (source != target && edge_keys.insert(key(source, target)).second) {
        edges.emplace_back(source, target);
        if (trace) ++trace->creations_succeeded;
      }
    }
    if (rng.bernoulli(transfer_prob) && !edges.empty()) {
      if (trace) ++trace->transfers_attempted;
      const std::size_t e = rng.uniform_index(edges.size());
      const std::uint32_t new_target = roulette(rng);
      const auto [source, old_target] = edges[e];
      if (new_target != source &&
          !edge_keys.contains(key(source, new_target))) {
        edge_keys.erase(key(source, old_target));
        edge_keys.insert(key(source, new_target));
        edges[e].second = new_target;
        if (trace) ++trace->transfers_succeeded;
      }
    }
  }

  IndexedGraph to_graph() const {
    IndexedGraph g;
    g.reserve_nodes(n_nodes);
    for (std::uint32_t i = 0; i < n_nodes; ++i) g.add_node(i);
    for (const auto& [from, to] : edges) g.add_edge(from, to);
    return g;
  }
};

}  // namespace detail

/// Runs the Baxter-Frean-style process for a fixed number of iterations.
inline IndexedGraph generate_bf(const BfParams& params,
                                BfTrace* trace = nullptr) {
  detail::validate(params);
  Xoshiro256StarStar rng(params.seed);
  detail::BfState state;
  for (std::uint64_t i = 0; i < params.n_iterations; ++i)
    state.step(params.create_prob, params.transfer_prob, rng, trace);
  return state.to_graph();
}

/// Runs the Baxter-Frean-style process until the graph has `n_nodes` nodes.
/// The final iteration still executes its edge events after the node target
/// is reached.
inline IndexedGraph generate_bf_grow(const BfGrowParams& params,
                                     BfTrace* trace = nullptr) {
  detail::validate(params);
  Xoshiro256StarStar rng(params.seed);
  detail::BfState state;
  const std::uint64_t max_iterations =
      1000 + static_cast<std::uint64_t>(100.0 * params.n_nodes /
                                        params.create_prob);
  std::uint64_t iterations = 0;
  while (state.n_nodes < params.n_nodes) {
    if (++iterations > max_iterations)
      throw std::runtime_error(
          "generate_bf_grow: node target not reached within iteration cap");
    state.step(params.create_prob, params.transfer_prob, rng, trace);
  }
  return state.to_graph();
}

/// One fully specified generator invocation. The embedded seed is used by
/// generate(); batch generation replaces it with a derived per-replicate
/// seed.
using ModelSpec = std::variant<GdGncParams, ErParams, BfParams, BfGrowParams>;

inline IndexedGraph generate_from(const GdGncParams& p) {
  return generate_gdgnc(p);
}
inline IndexedGraph generate_from(const ErParams& p) { return generate_er(p); }
inline IndexedGraph generate_from(const BfParams& p) { return generate_bf(p); }
inline IndexedGraph generate_from(const BfGrowParams& p) {
  return generate_bf_grow(p);
}

inline IndexedGraph generate(const ModelSpec& spec) {
  return std::visit(
      [](const auto& params) { return generate_from(params); }, spec);
}

inline ModelSpec with_seed(ModelSpec spec, std::uint64_t seed) {
  std::visit([seed](auto& params) { params.seed = seed; }, spec);
  return spec;
}

inline std::uint64_t seed_of(const ModelSpec& spec) {
  return std::visit([](const auto& params) { return params.seed; }, spec);
}

/// Generates `replicates` independent graphs. Replicate k uses the seed
/// derive_seed(base_seed, k); the returned list is ordered by k.
inline std::vector<IndexedGraph> generate_batch(const ModelSpec& spec,
                                                std::uint32_t replicates,
                                                std::uint64_t base_seed) {
  if (replicates < 1)
    throw std::invalid_argument("generate_batch: replicates must be >= 1");
  std::vector<IndexedGraph> graphs;
  graphs.reserve(replicates);
  for (std::uint32_t k = 0; k < replicates; ++k)
    graphs.push_back(generate(with_seed(spec, derive_seed(base_seed, k))));
  return graphs;
}

}  // namespace depgraph
