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

#include "depgraph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <vector>

#include "gtest/gtest.h"

#include "depgraph/degree.hpp"

namespace depgraph {
namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list_of(
    const IndexedGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edge_count());
  g.for_each_edge([&](NodeIndex u, NodeIndex v) { edges.emplace_back(u, v); });
  return edges;
}

void check_simple_digraph(const IndexedGraph& g) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::size_t in_sum = 0;
  std::size_t out_sum = 0;
  g.for_each_edge([&](NodeIndex u, NodeIndex v) {
    EXPECT_NE(u, v);
    EXPECT_TRUE(seen.emplace(u, v).second);
  });
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    in_sum += g.in_degree(i);
    out_sum += g.out_degree(i);
  }
  EXPECT_EQ(seen.size(), g.edge_count());
  EXPECT_EQ(in_sum, g.edge_count());
  EXPECT_EQ(out_sum, g.edge_count());
}

TEST(GncAttachTest, SingleCandidateAddsOneEdge) {
  IndexedGraph g;
  g.add_node(0);
  g.add_node(1);
  Xoshiro256StarStar rng(3);
  const GncAttachResult result = gnc_attach(g, 1, rng);
  EXPECT_EQ(result.target, 0u);
  EXPECT_FALSE(result.aborted);
  ASSERT_EQ(result.added.size(), 1u);
  EXPECT_EQ(result.added[0], (std::pair<NodeIndex, NodeIndex>{1, 0}));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GncAttachTest, CopiesSuccessorsOfTarget) {
  // succ(0) = {1, 2}; when the attach selects node 0, the new node must end
  // with out-degree 1 + out-degree(0).
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    IndexedGraph g;
    for (std::uint32_t i = 0; i < 4; ++i) g.add_node(i);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    Xoshiro256StarStar rng(seed);
    const GncAttachResult result = gnc_attach(g, 3, rng);
    if (result.target != 0) continue;
    std::vector<std::pair<NodeIndex, NodeIndex>> expected{{3, 0}, {3, 1},
                                                          {3, 2}};
    EXPECT_EQ(result.added, expected);
    EXPECT_EQ(g.out_degree(3), 3u);
    return;
  }
  FAIL() << "no seed selected node 0";
}

TEST(GncAttachTest, AbortsWhenSelectionHitsForbiddenTarget) {
  // Probe which node a given seed selects, then replay the same draw with
  // that node forbidden: the attachment must abort without adding edges.
  IndexedGraph probe_graph;
  for (std::uint32_t i = 0; i < 4; ++i) probe_graph.add_node(i);
  probe_graph.add_edge(0, 1);
  Xoshiro256StarStar probe(21);
  const GncAttachResult dry = gnc_attach(probe_graph, 3, probe);

  IndexedGraph g;
  for (std::uint32_t i = 0; i < 4; ++i) g.add_node(i);
  g.add_edge(0, 1);
  Xoshiro256StarStar rng(21);
  const GncAttachResult result = gnc_attach(g, 3, rng, dry.target);
  EXPECT_TRUE(result.aborted);
  EXPECT_EQ(result.target, dry.target);
  EXPECT_TRUE(result.added.empty());
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GncAttachTest, ErrorsWithoutEligibleTarget) {
  IndexedGraph g;
  g.add_node(0);
  Xoshiro256StarStar rng(1);
  EXPECT_THROW(gnc_attach(g, 0, rng), std::invalid_argument);
  EXPECT_THROW(gnc_attach(g, 7, rng), std::invalid_argument);
}

TEST(GdGncTest, SingleIterationYieldsIsolatedNode) {
  for (const double p : {0.0, 0.5, 1.0}) {
    const IndexedGraph g = generate_gdgnc({1, p, 0.5, 11});
    EXPECT_EQ(g.node_count(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
  }
}

TEST(GdGncTest, ClassicGncAttachNeighborhoods) {
  // p=1, q=0: each node's out-neighborhood is exactly the selected node
  // plus its successors at attach time; only node 0 stays a sink.
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    GdGncTrace trace;
    const IndexedGraph g = generate_gdgnc({200, 1.0, 0.0, seed}, &trace);
    std::size_t sinks = 0;
    for (NodeIndex i = 0; i < g.node_count(); ++i)
      if (g.out_degree(i) == 0) ++sinks;
    EXPECT_EQ(sinks, 1u);
    EXPECT_EQ(g.out_degree(0), 0u);
    for (const auto& record : trace) {
      if (record.node == 0) continue;
      ASSERT_TRUE(record.gnc_branch);
      ASSERT_TRUE(record.first_attach.has_value());
      EXPECT_FALSE(record.second_attach.has_value());
      std::set<NodeIndex> expected(record.first_attach->successor_snapshot.begin(),
                                   record.first_attach->successor_snapshot.end());
      expected.insert(record.first_attach->target);
      const auto& succ = g.successors(record.node);
      const std::set<NodeIndex> actual(succ.begin(), succ.end());
      EXPECT_EQ(actual, expected);
    }
  }
}

TEST(GdGncTest, OutDegreeZeroCountForClassicGnc) {
  const IndexedGraph g = generate_gdgnc({1000, 1.0, 0.0, 42});
  const DegreeView view = degree_view(g, Direction::out);
  ASSERT_TRUE(view.counts.contains(0));
  EXPECT_EQ(view.counts.at(0), 1u);
}

TEST(GdGncTest, PZeroDegeneratesToReverseChain) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const IndexedGraph g = generate_gdgnc({50, 0.0, 0.7, seed});
    EXPECT_EQ(g.edge_count(), 49u);
    EXPECT_EQ(g.in_degree(0), 0u);
    for (NodeIndex i = 1; i < g.node_count(); ++i)
      EXPECT_EQ(g.in_degree(i), 1u);
    g.for_each_edge([](NodeIndex u, NodeIndex v) { EXPECT_LT(u, v); });
  }
}

TEST(GdGncTest, GraphsAreSimpleWithEnoughEdges) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{
           {0.2, 0.0}, {0.5, 0.5}, {0.8, 0.3}, {1.0, 1.0}}) {
    const IndexedGraph g = generate_gdgnc({300, p, q, 77});
    EXPECT_EQ(g.node_count(), 300u);
    EXPECT_GE(g.edge_count(), 299u);
    check_simple_digraph(g);
  }
}

TEST(GdGncTest, DeterministicForFixedSeed) {
  const GdGncParams params{500, 0.7, 0.4, 4242};
  const IndexedGraph a = generate_gdgnc(params);
  const IndexedGraph b = generate_gdgnc(params);
  EXPECT_EQ(edge_list_of(a), edge_list_of(b));
  const IndexedGraph c = generate_gdgnc({500, 0.7, 0.4, 4243});
  EXPECT_NE(edge_list_of(a), edge_list_of(c));
}

TEST(GdGncTest, SinkFractionBound) {
  // Sinks can only be node 0 plus nodes created through the reverse-edge
  // branch, so their fraction stays below (1 - p) + 1/n at this scale.
  for (const double p : {0.2, 0.5, 0.8, 0.95}) {
    for (const double q : {0.0, 0.3, 1.0}) {
      const IndexedGraph g = generate_gdgnc({2000, p, q, 1357});
      std::size_t sinks = 0;
      for (NodeIndex i = 0; i < g.node_count(); ++i)
        if (g.out_degree(i) == 0) ++sinks;
      const double fraction =
          static_cast<double>(sinks) / static_cast<double>(g.node_count());
      EXPECT_LE(fraction, (1.0 - p) + 1.0 / 2000.0)
          << "p=" << p << " q=" << q;
    }
  }
}

TEST(GdGncTest, SinksComeFromReverseBranchOnly) {
  GdGncTrace trace;
  const IndexedGraph g = generate_gdgnc({300, 0.6, 0.4, 5}, &trace);
  for (NodeIndex i = 1; i < g.node_count(); ++i) {
    if (g.out_degree(i) == 0)
      EXPECT_TRUE(trace[i].reverse_edge.has_value()) << "node " << i;
  }
}

TEST(GdGncTest, AttachGrantsTargetOutDegreePlusOne) {
  GdGncTrace trace;
  generate_gdgnc({400, 1.0, 0.0, 31}, &trace);
  for (const auto& record : trace) {
    if (!record.first_attach) continue;
    // Single attach on a fresh node: no overlap is possible.
    EXPECT_EQ(record.first_attach->added.size(),
              1 + record.first_attach->successor_snapshot.size());
  }
}

TEST(GdGncTest, DoubleAttachSkipsOverlapInsteadOfDuplicating) {
  GdGncTrace trace;
  const IndexedGraph g = generate_gdgnc({500, 1.0, 1.0, 12}, &trace);
  check_simple_digraph(g);
  bool saw_abort = false;
  bool saw_overlap = false;
  for (const auto& record : trace) {
    if (!record.second_attach) continue;
    if (record.second_attach->aborted) {
      saw_abort = true;
      EXPECT_TRUE(record.second_attach->added.empty());
      EXPECT_EQ(record.second_attach->target, record.first_attach->target);
    } else if (record.second_attach->added.size() <
               1 + record.second_attach->successor_snapshot.size()) {
      saw_overlap = true;
    }
  }
  EXPECT_TRUE(saw_abort);
  EXPECT_TRUE(saw_overlap);
}

TEST(GdGncTest, RejectsInvalidParameters) {
  EXPECT_THROW(generate_gdgnc({0, 0.5, 0.5, 1}), std::invalid_argument);
  EXPECT_THROW(generate_gdgnc({10, 1.5, 0.5, 1}), std::invalid_argument);
  EXPECT_THROW(generate_gdgnc({10, 0.5, -0.1, 1}), std::invalid_argument);
}

TEST(ErTest, ZeroProbabilityYieldsNoEdges) {
  const IndexedGraph g = generate_er({50, 0.0, 9});
  EXPECT_EQ(g.node_count(), 50u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ErTest, FullProbabilityYieldsCompleteDigraph) {
  const IndexedGraph g = generate_er({40, 1.0, 9});
  EXPECT_EQ(g.edge_count(), 40u * 39u);
  EXPECT_DOUBLE_EQ(density(g), 1.0);
}

TEST(ErTest, MeanDensityTracksEdgeProbability) {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    sum += density(generate_er({500, 0.01, seed}));
  const double mean = sum / 30.0;
  EXPECT_NEAR(mean, 0.01, 0.001);
}

TEST(ErTest, EdgeCountPassesBinomialChiSquare) {
  // |E| ~ Binomial(n(n-1), p) at desk scale: n=30, p=0.2, 200 runs.
  const int runs = 200;
  const double trials = 30.0 * 29.0;
  const double p = 0.2;
  std::vector<std::size_t> counts;
  counts.reserve(runs);
  for (std::uint64_t seed = 0; seed < runs; ++seed)
    counts.push_back(generate_er({30, p, 1000 + seed}).edge_count());

  // Fixed bins around the mean 174, sd ~11.8.
  const std::vector<double> edges{159.5, 167.5, 173.5, 179.5, 187.5};
  std::vector<double> observed(edges.size() + 1, 0.0);
  for (const std::size_t c : counts) {
    std::size_t bin = 0;
    while (bin < edges.size() && static_cast<double>(c) > edges[bin]) ++bin;
    observed[bin] += 1.0;
  }
  const auto log_pmf = [&](int k) {
    return std::lgamma(trials + 1) - std::lgamma(k + 1.0) -
           std::lgamma(trials - k + 1.0) + k * std::log(p) +
           (trials - k) * std::log(1.0 - p);
  };
  std::vector<double> expected(edges.size() + 1, 0.0);
  for (int k = 0; k <= static_cast<int>(trials); ++k) {
    std::size_t bin = 0;
    while (bin < edges.size() && static_cast<double>(k) > edges[bin]) ++bin;
    expected[bin] += std::exp(log_pmf(k)) * runs;
  }
  double chi2 = 0.0;
  for (std::size_t bin = 0; bin < observed.size(); ++bin) {
    ASSERT_GE(expected[bin], 5.0);
    const double diff = observed[bin] - expected[bin];
    chi2 += diff * diff / expected[bin];
  }
  // df = 5, alpha = 0.001.
  EXPECT_LT(chi2, 20.52);
}

TEST(BfTest, ZeroIterationsYieldsEmptyGraph) {
  const IndexedGraph g = generate_bf({0, 0.5, 0.5, 3});
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BfTest, WithoutTransfersEdgeCountEqualsSuccessfulCreations) {
  BfTrace trace;
  const IndexedGraph g = generate_bf({2000, 0.3, 0.0, 17}, &trace);
  EXPECT_EQ(g.edge_count(), trace.creations_succeeded);
  EXPECT_EQ(g.node_count(), trace.nodes_added);
  EXPECT_EQ(trace.transfers_attempted, 0u);
  check_simple_digraph(g);
}

TEST(BfTest, TransfersPreserveEdgeCount) {
  BfTrace trace;
  const IndexedGraph g = generate_bf({3000, 0.4, 0.8, 23}, &trace);
  EXPECT_EQ(g.edge_count(), trace.creations_succeeded);
  EXPECT_GT(trace.transfers_succeeded, 0u);
  check_simple_digraph(g);
}

TEST(BfTest, DeterministicForFixedSeed) {
  const BfParams params{1500, 0.5, 0.4, 77};
  EXPECT_EQ(edge_list_of(generate_bf(params)),
            edge_list_of(generate_bf(params)));
}

TEST(BfGrowTest, ReachesExactNodeTarget) {
  const IndexedGraph g = generate_bf_grow({250, 0.3, 0.5, 5});
  EXPECT_EQ(g.node_count(), 250u);
  check_simple_digraph(g);
}

TEST(BfGrowTest, ZeroCreateRateIsRejected) {
  EXPECT_THROW(generate_bf_grow({100, 0.0, 0.5, 5}), std::invalid_argument);
}

TEST(BatchTest, DerivedSeedsAreDistinct) {
  std::unordered_set<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 10000; ++k)
    seeds.insert(derive_seed(998877, k));
  EXPECT_EQ(seeds.size(), 10000u);
}

TEST(BatchTest, ThirtyReplicatesAreDistinctGraphs) {
  const auto graphs =
      generate_batch(GdGncParams{100, 0.7, 0.3, 0}, 30, 24680);
  ASSERT_EQ(graphs.size(), 30u);
  std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> distinct;
  for (const auto& g : graphs) distinct.insert(edge_list_of(g));
  EXPECT_EQ(distinct.size(), 30u);
}

TEST(BatchTest, SingletonMatchesDirectGenerateWithDerivedSeed) {
  const auto batch = generate_batch(GdGncParams{80, 0.6, 0.2, 0}, 1, 555);
  const IndexedGraph direct =
      generate_gdgnc({80, 0.6, 0.2, derive_seed(555, 0)});
  ASSERT_EQ(batch.size(), 1u);
  EXPECT_EQ(edge_list_of(batch[0]), edge_list_of(direct));
}

TEST(BatchTest, RepeatedCallsAreIdentical) {
  const ModelSpec spec = ErParams{60, 0.05, 0};
  const auto a = generate_batch(spec, 5, 31);
  const auto b = generate_batch(spec, 5, 31);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(edge_list_of(a[i]), edge_list_of(b[i]));
}

}  // namespace
}  // namespace depgraph
