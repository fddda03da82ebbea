#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace defcol {
namespace {

CapacityMap caps13(int n) { return CapacityMap::uniform(n, kCap13); }

TEST(CapacityTest, BoundsAreEnforced) {
  EXPECT_THROW(CapacityMap({{2, 0}}), std::invalid_argument);
  EXPECT_THROW(CapacityMap({{0, 4}}), std::invalid_argument);
  EXPECT_THROW(CapacityMap({{-2, 0}}), std::invalid_argument);
  EXPECT_NO_THROW(CapacityMap({{-1, -1}, {1, 3}}));
}

TEST(VerifyTest, HandExamples) {
  const Graph k6 = Graph::complete(6);
  EXPECT_TRUE(verify_coloring(k6, caps13(6), {1, 1, 2, 2, 2, 2}));
  EXPECT_FALSE(verify_coloring(k6, caps13(6), {1, 1, 1, 2, 2, 2}));
  EXPECT_FALSE(verify_coloring(Graph(1), CapacityMap({{-1, 0}}), {1}));
  EXPECT_TRUE(verify_coloring(Graph::complete(2), caps13(2), {2, 2}));
}

TEST(VerifyTest, RejectsPartialOrMismatched) {
  EXPECT_THROW(verify_coloring(Graph(2), caps13(2), {1, 0}), std::invalid_argument);
  EXPECT_THROW(verify_coloring(Graph(2), caps13(2), {1}), std::invalid_argument);
  EXPECT_THROW(verify_coloring(Graph(2), caps13(3), {1, 1}), std::invalid_argument);
}

TEST(SolveTest, CompleteGraphCounting) {
  const auto k6 = solve_13(Graph::complete(6));
  ASSERT_TRUE(k6);
  EXPECT_TRUE(verify_coloring(Graph::complete(6), caps13(6), *k6));
  EXPECT_FALSE(solve_13(Graph::complete(7)));
}

TEST(SolveTest, ForbiddenVertexMakesUnsat) {
  std::vector<Capacity> caps(5, kCap13);
  caps[3] = {-1, -1};
  EXPECT_FALSE(solve(Graph::cycle(5), CapacityMap(caps)));
  EXPECT_FALSE(solve(Graph(5), CapacityMap(caps)));
}

TEST(SolveTest, SmallFamilies) {
  const auto c5 = solve_13(Graph::cycle(5));
  ASSERT_TRUE(c5);
  EXPECT_TRUE(verify_coloring(Graph::cycle(5), caps13(5), *c5));
  const auto empty = solve_13(Graph(4));
  ASSERT_TRUE(empty);
  EXPECT_TRUE(verify_coloring(Graph(4), caps13(4), *empty));
  const auto none = solve_13(Graph(0));
  ASSERT_TRUE(none);
  EXPECT_TRUE(none->empty());
}

TEST(SolveTest, BruteForceAgreesOnCompleteGraphs) {
  EXPECT_TRUE(solve_brute_force(Graph::complete(6), caps13(6)));
  EXPECT_FALSE(solve_brute_force(Graph::complete(7), caps13(7)));
}

TEST(SolveTest, AgreesWithEnumerationOracle) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 2000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const Graph g = random_graph(n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0, rng());
    const CapacityMap c = oracle::random_caps(n, rng);
    const auto phi = solve(g, c);
    ASSERT_EQ(phi.has_value(), oracle::colorable_by_enumeration(g, c)) << write_graph6(g);
    if (phi) {
      EXPECT_TRUE(verify_coloring(g, c, *phi));
    }
  }
}

TEST(SolveTest, DenseUniformInstancesVerify) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 100; ++k) {
    const int n = 10 + static_cast<int>(rng() % 9);
    const Graph g = random_graph(n, 0.35, rng());
    const auto phi = solve_13(g);
    const auto brute = solve_brute_force(g, caps13(n));
    ASSERT_EQ(phi.has_value(), brute.has_value());
    if (phi) {
      EXPECT_TRUE(verify_coloring(g, caps13(n), *phi));
    }
  }
}

TEST(CriticalTest, ForbiddenSingleVertexIsCritical) {
  const auto rep = is_critical(Graph(1), CapacityMap({{-1, -1}}));
  EXPECT_TRUE(rep.critical);
  EXPECT_EQ(rho_set(Graph(1), CapacityMap({{-1, -1}}), VertexSet::single(0)), -6);
}

TEST(CriticalTest, ColorableGraphIsNotCritical) {
  const auto rep = is_critical(Graph::complete(6), caps13(6));
  EXPECT_FALSE(rep.critical);
  ASSERT_TRUE(rep.coloring);
}

TEST(CriticalTest, CompleteSevenIsNotCritical) {
  const Graph k7 = Graph::complete(7);
  const auto rep = is_critical(k7, caps13(7));
  EXPECT_FALSE(rep.critical);
  ASSERT_TRUE(rep.blocking_edge);
  EXPECT_FALSE(oracle::colorable_by_enumeration(k7.without_edge(*rep.blocking_edge), caps13(7)));
}

TEST(CriticalTest, AdjacentZeroMinusOnePairIsCritical) {
  const CapacityMap c({{0, -1}, {0, -1}});
  const auto rep = is_critical(Graph::complete(2), c);
  EXPECT_TRUE(rep.critical);
  ASSERT_EQ(rep.edge_witnesses.size(), 1U);
  EXPECT_TRUE(verify_coloring(Graph(2), c, rep.edge_witnesses[0].coloring));
}

TEST(CriticalTest, IsolatedForbiddenVertexPlusSpareVertexIsNotCritical) {
  // Deleting the spare isolated vertex leaves an uncolourable graph.
  const auto rep = is_critical(Graph(2), CapacityMap({{-1, -1}, {1, 3}}));
  EXPECT_FALSE(rep.critical);
  ASSERT_TRUE(rep.blocking_isolated);
  EXPECT_EQ(*rep.blocking_isolated, 1);
}

TEST(CriticalTest, MatchesSubgraphDefinitionOnSmallGraphs) {
  // Critical: uncolourable, and every subgraph missing one edge or one vertex is colourable.
  std::mt19937_64 rng(23);
  for (int k = 0; k < 400; ++k) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Graph g = random_graph(n, 0.6, rng());
    const CapacityMap c = oracle::random_caps(n, rng);
    bool expect = !oracle::colorable_by_enumeration(g, c);
    for (const Edge& e : g.edges()) expect = expect && oracle::colorable_by_enumeration(g.without_edge(e), c);
    for (int v = 0; v < n && expect; ++v) {
      std::vector<Capacity> rest;
      for (int u = 0; u < n; ++u)
        if (u != v) rest.push_back(c[u]);
      expect = oracle::colorable_by_enumeration(g.induced(g.vertices() - VertexSet::single(v)), CapacityMap(rest));
    }
    EXPECT_EQ(is_critical(g, c).critical, expect) << write_graph6(g);
  }
}

}  // namespace
}  // namespace defcol
