#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace defcol {
namespace {

CapacityMap caps13(int n) { return CapacityMap::uniform(n, kCap13); }

const CapacityMap kPathCaps({{0, 3}, {1, 3}, {0, 3}});

// C4 0-1-2-3 with tops 1 and 3 and normal (1,2)-vertices 0 and 2.
const Graph kSquare = Graph::cycle(4);
const CapacityMap kSquareCaps({{1, 2}, {1, 3}, {1, 2}, {1, 3}});

// A bare triangle as a quasi-graph, whatever the capacities.
QuasiGraph triangle() {
  QuasiGraph q;
  q.vertices = {0, 1, 2};
  q.index = {0, 1, 2};
  q.real_edges = {{0, 1}, {0, 2}, {1, 2}};
  return q;
}

TEST(QuasiGraphTest, PathThroughTop) {
  const auto q = build_quasi_graph(Graph::path(3), kPathCaps);
  EXPECT_EQ(q.vertices, (std::vector<int>{0, 2}));
  EXPECT_TRUE(q.real_edges.empty());
  ASSERT_EQ(q.quasi_edges.size(), 1U);
  EXPECT_EQ(q.quasi_edges[0].a, 0);
  EXPECT_EQ(q.quasi_edges[0].b, 1);
  EXPECT_EQ(q.quasi_edges[0].top, 1);
  EXPECT_EQ(q.index, (std::vector<int>{0, -1, 1}));
}

TEST(QuasiGraphTest, NoTopsLeavesGraphUnchanged) {
  const auto q = build_quasi_graph(Graph::complete(7), caps13(7));
  EXPECT_EQ(q.order(), 7);
  EXPECT_EQ(q.real_edges, Graph::complete(7).edges());
  EXPECT_TRUE(q.quasi_edges.empty());
}

TEST(QuasiGraphTest, ParallelQuasiEdges) {
  const auto q = build_quasi_graph(kSquare, kSquareCaps);
  EXPECT_EQ(q.vertices, (std::vector<int>{0, 2}));
  ASSERT_EQ(q.quasi_edges.size(), 2U);
  EXPECT_EQ(q.quasi_edges[0].top, 1);
  EXPECT_EQ(q.quasi_edges[1].top, 3);
  EXPECT_EQ(q.quasi_degree(0), 2);
  EXPECT_EQ(q.real_degree(0), 0);
}

TEST(QuasiGraphTest, AdjacentTopsAreRejected) {
  EXPECT_THROW(build_quasi_graph(Graph::cycle(4), caps13(4)), QuasiGraphError);
}

TEST(ScoreTest, HandValues) {
  const auto tri = triangle();
  EXPECT_EQ(score(tri, caps13(3), {2, 2, 2}).quarters, 24);
  EXPECT_EQ(score(tri, caps13(3), {1, 2, 2}).quarters, 24);
  EXPECT_DOUBLE_EQ(score(tri, caps13(3), {2, 2, 2}).value(), 6.0);

  const auto q = build_quasi_graph(Graph::path(3), kPathCaps);
  EXPECT_EQ(score(q, kPathCaps, {2, 2}).quarters, 24);
  EXPECT_EQ(score(q, kPathCaps, {1, 2}).quarters, 10);
  EXPECT_THROW(score(q, kPathCaps, {1}), std::invalid_argument);
}

TEST(ScoreTest, MatchesPerVertexDefinition) {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const Graph g = random_graph(n, 0.25, rng());
    const CapacityMap c = (k % 2) ? caps13(n) : oracle::random_caps(n, rng);
    QuasiGraph q;
    try {
      q = build_quasi_graph(g, c);
    } catch (const QuasiGraphError&) {
      continue;
    }
    for (int t = 0; t < 5; ++t) {
      Assignment phi(q.order());
      for (auto& x : phi) x = static_cast<std::uint8_t>(1 + rng() % 2);
      EXPECT_EQ(score(q, c, phi).quarters, oracle::score_by_definition(q, c, phi));
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(MaximizeTest, SingleVertex) {
  const auto q13 = build_quasi_graph(Graph(1), caps13(1));
  EXPECT_EQ(maximize_score(q13, caps13(1), MaximizeMode::Exact), (Assignment{2}));
  const CapacityMap c({{1, -1}});
  const auto q = build_quasi_graph(Graph(1), c);
  const auto best = maximize_score(q, c, MaximizeMode::Exact);
  EXPECT_EQ(best, (Assignment{1}));
  EXPECT_EQ(score(q, c, best).quarters, 4);
}

TEST(MaximizeTest, TriangleReturnsLexicographicallyLeastMaximiser) {
  const auto q = triangle();
  const auto best = maximize_score(q, caps13(3), MaximizeMode::Exact);
  EXPECT_EQ(best, (Assignment{1, 2, 2}));
  EXPECT_EQ(score(q, caps13(3), best).quarters, 24);
}

TEST(MaximizeTest, ExactMatchesExhaustiveOracle) {
  std::mt19937_64 rng(67);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Graph g = random_graph(n, 0.35, rng());
    const CapacityMap c = oracle::random_caps(n, rng);
    const auto q = build_quasi_graph(g, c);
    std::optional<Assignment> best;
    std::int64_t best_score = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q.order()); ++mask) {
      Assignment a(q.order());
      for (int v = 0; v < q.order(); ++v) a[v] = ((mask >> v) & 1U) ? 2 : 1;
      const std::int64_t s = oracle::score_by_definition(q, c, a);
      if (!best || s > best_score || (s == best_score && a < *best)) {
        best = a;
        best_score = s;
      }
    }
    EXPECT_EQ(maximize_score(q, c, MaximizeMode::Exact), *best);
  }
}

TEST(MaximizeTest, LocalSearchIsDeterministicAndLocallyOptimal) {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 50; ++k) {
    const int n = 10 + static_cast<int>(rng() % 30);
    const Graph g = random_graph(n, 0.2, rng());
    const CapacityMap c = oracle::random_caps(n, rng);
    const auto q = build_quasi_graph(g, c);
    const LocalSearchOptions opts{static_cast<std::uint64_t>(k), 4};
    const auto a = maximize_score(q, c, MaximizeMode::LocalSearch, opts);
    EXPECT_EQ(a, maximize_score(q, c, MaximizeMode::LocalSearch, opts));
    const std::int64_t s = score(q, c, a).quarters;
    for (int v = 0; v < q.order(); ++v) {
      Assignment b = a;
      b[v] = static_cast<std::uint8_t>(3 - b[v]);
      EXPECT_LE(score(q, c, b).quarters, s);
    }
  }
}

TEST(ExtendTest, PathWithAgreeingEnds) {
  const Graph path = Graph::path(3);
  const auto q = build_quasi_graph(path, kPathCaps);
  const auto ext = extend_to_full_coloring(path, kPathCaps, q, {2, 2});
  ASSERT_TRUE(ext.coloring) << ext.failure;
  EXPECT_EQ(ext.extension_case, 2);
  EXPECT_EQ(*ext.coloring, (Coloring{2, 1, 2}));
  EXPECT_TRUE(verify_coloring(path, kPathCaps, *ext.coloring));
}

TEST(ExtendTest, ParallelConflictsFormTwoCycle) {
  const auto q = build_quasi_graph(kSquare, kSquareCaps);
  const auto ext = extend_to_full_coloring(kSquare, kSquareCaps, q, {1, 2});
  ASSERT_TRUE(ext.coloring) << ext.failure;
  EXPECT_EQ(ext.extension_case, 2);
  EXPECT_TRUE(ext.apex_arcs.empty());
  ASSERT_EQ(ext.orientation.size(), 2U);
  // One quasi-edge leaves each endpoint, so each gets exactly one same-coloured top.
  EXPECT_NE(ext.orientation[0].first, ext.orientation[1].first);
  EXPECT_EQ(same_colored_degree(kSquare, *ext.coloring, 0), 1);
  EXPECT_EQ(same_colored_degree(kSquare, *ext.coloring, 2), 1);
  EXPECT_TRUE(verify_coloring(kSquare, kSquareCaps, *ext.coloring));
}

TEST(ExtendTest, CompleteSevenFails) {
  const Graph k7 = Graph::complete(7);
  const auto q = build_quasi_graph(k7, caps13(7));
  const auto psi = maximize_score(q, caps13(7), MaximizeMode::Exact);
  const auto ext = extend_to_full_coloring(k7, caps13(7), q, psi);
  EXPECT_FALSE(ext.coloring);
  EXPECT_FALSE(ext.failure.empty());
}

TEST(ExtendTest, OrientationIsBalancedAndLiftsVerify) {
  std::mt19937_64 rng(73);
  int lifted = 0, case_one = 0;
  for (int k = 0; k < 600; ++k) {
    // Sparse (1,3) graphs with plenty of degree-2 vertices.
    const int n = 4 + static_cast<int>(rng() % 16);
    const Graph g = random_graph(n, 2.6 / n, rng());
    const CapacityMap c = caps13(n);
    QuasiGraph q;
    try {
      q = build_quasi_graph(g, c);
    } catch (const QuasiGraphError&) {
      continue;
    }
    if (q.order() == 0 || q.order() > 16) continue;
    const auto psi = maximize_score(q, c, MaximizeMode::Exact);
    const auto ext = extend_to_full_coloring(g, c, q, psi);
    if (!ext.coloring) continue;
    ++lifted;
    EXPECT_TRUE(verify_coloring(g, c, *ext.coloring));
    if (ext.extension_case == 1) {
      ++case_one;
      continue;
    }
    std::vector<int> out(q.order(), 0), in(q.order(), 0);
    for (const auto& [tail, head] : ext.orientation)
      if (tail >= 0) {
        ++out[tail];
        ++in[head];
      }
    for (int v = 0; v < q.order(); ++v) EXPECT_LE(std::abs(out[v] - in[v]), 1);
  }
  EXPECT_GT(lifted, 50);
  RecordProperty("case_one_lifts", case_one);
}

TEST(PipelineTest, PathSucceedsWithoutFallback) {
  const auto res = proof_guided_solve(Graph::path(3), kPathCaps);
  ASSERT_TRUE(res.coloring);
  EXPECT_FALSE(res.trace.fallback);
  EXPECT_TRUE(verify_coloring(Graph::path(3), kPathCaps, *res.coloring));
}

TEST(PipelineTest, CompleteSevenFallsBackToUnsat) {
  const auto res = proof_guided_solve(Graph::complete(7), caps13(7));
  EXPECT_FALSE(res.coloring);
  EXPECT_TRUE(res.trace.fallback);
}

TEST(PipelineTest, AdjacentTopsFallBack) {
  const auto res = proof_guided_solve(Graph::cycle(5), caps13(5));
  ASSERT_TRUE(res.coloring);
  EXPECT_TRUE(res.trace.fallback);
  EXPECT_FALSE(res.trace.quasi_graph_built);
}

TEST(PipelineTest, AgreesWithSolver) {
  std::mt19937_64 rng(79);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Graph g = random_graph(n, 0.45, rng());
    const CapacityMap c = (k % 3) ? caps13(n) : oracle::random_caps(n, rng);
    const auto res = proof_guided_solve(g, c);
    ASSERT_EQ(res.coloring.has_value(), solve(g, c).has_value());
    if (res.coloring) {
      EXPECT_TRUE(verify_coloring(g, c, *res.coloring));
    }
  }
}

}  // namespace
}  // namespace defcol
