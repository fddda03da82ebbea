#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace defcol {
namespace {

CapacityMap caps13(int n) { return CapacityMap::uniform(n, kCap13); }

void expect_valid(const json& cert) {
  const Verdict v = verify_certificate(cert);
  EXPECT_TRUE(v.ok) << v.reason << "\n" << cert.dump();
}

void expect_invalid(const json& cert) { EXPECT_FALSE(verify_certificate(cert).ok) << cert.dump(); }

TEST(CapsJsonTest, ParsesAndRejects) {
  const auto u = caps_from_json(caps_spec_to_json("uniform:1,3"), 4);
  EXPECT_EQ(u.size(), 4);
  EXPECT_EQ(u[2], kCap13);
  const auto pv = caps_from_json(json::parse(R"({"per_vertex": [[0, 3], [1, 2]]})"), 2);
  EXPECT_EQ(pv[1], (Capacity{1, 2}));
  EXPECT_EQ(caps_to_json(pv), json::parse(R"({"per_vertex": [[0, 3], [1, 2]]})"));
  EXPECT_EQ(caps_to_json(u), json::parse(R"({"uniform": [1, 3]})"));
  EXPECT_THROW(caps_from_json(json::parse(R"({"per_vertex": [[0, 3]]})"), 2), InputError);
  EXPECT_THROW(caps_from_json(json::parse(R"({"uniform": [2, 3]})"), 2), InputError);
  EXPECT_THROW(caps_from_json(json::parse(R"({"other": 1})"), 2), InputError);
  EXPECT_THROW(caps_spec_to_json("uniform:1"), InputError);
  EXPECT_THROW(caps_spec_to_json("{not json"), InputError);
  EXPECT_THROW(caps_spec_to_json("/nonexistent/caps.json"), InputError);
}

TEST(CertificateTest, EnvelopeFields) {
  const Graph k6 = Graph::complete(6);
  const json cert = solve_certificate(k6, caps13(6), solve_13(k6), "exact");
  EXPECT_EQ(cert["kind"], "coloring");
  EXPECT_EQ(cert["tool"], "defcol");
  EXPECT_EQ(cert["graph"], write_graph6(k6));
  EXPECT_EQ(cert["input_hash"].get<std::string>().rfind("fnv1a64:", 0), 0U);
  expect_valid(cert);
}

TEST(CertificateTest, ColoringAndUnsat) {
  const Graph k7 = Graph::complete(7);
  const json unsat = solve_certificate(k7, caps13(7), std::nullopt, "exact");
  EXPECT_EQ(unsat["kind"], "unsat");
  expect_valid(unsat);

  // A bogus coloring and a false unsat claim are both rejected.
  json bad = solve_certificate(k7, caps13(7), Coloring{1, 1, 2, 2, 2, 2, 2}, "exact");
  expect_invalid(bad);
  const Graph k6 = Graph::complete(6);
  expect_invalid(solve_certificate(k6, caps13(6), std::nullopt, "exact"));

  json tampered = solve_certificate(k6, caps13(6), solve_13(k6), "exact");
  tampered["graph"] = write_graph6(k7);
  expect_invalid(tampered);
}

TEST(CertificateTest, Critical) {
  expect_valid(critical_certificate(Graph(1), CapacityMap({{-1, -1}}), is_critical(Graph(1), CapacityMap({{-1, -1}}))));
  const Graph k7 = Graph::complete(7);
  expect_valid(critical_certificate(k7, caps13(7), is_critical(k7, caps13(7))));
  json flipped = critical_certificate(k7, caps13(7), is_critical(k7, caps13(7)));
  flipped["payload"]["critical"] = true;
  expect_invalid(flipped);
}

TEST(CertificateTest, PotentialMadSparsityAudit) {
  const Graph k7 = Graph::complete(7);
  const auto m = min_potential(k7, caps13(7), SubsetFilter::AllNonempty);
  json pc = potential_certificate(k7, caps13(7), SubsetFilter::AllNonempty, m);
  EXPECT_EQ(pc["payload"]["value"], -91);
  expect_valid(pc);
  pc["payload"]["value"] = -90;
  expect_invalid(pc);

  json mc = mad_certificate(Graph::cycle(5), mad(Graph::cycle(5)));
  EXPECT_EQ(mc["payload"]["mad"], json::parse(R"({"num": 2, "den": 1})"));
  expect_valid(mc);
  mc["payload"]["mad"]["num"] = 3;
  expect_invalid(mc);

  const auto sc = is_ab_sparse(k7, kSparsityA, kSparsityB, false);
  expect_valid(sparsity_certificate(k7, kSparsityA, kSparsityB, false, sc));

  json ac = audit_certificate(k7, caps13(7));
  expect_valid(ac);
  EXPECT_EQ(ac["kind"], "charge-audit");
}

TEST(CertificateTest, Reduction) {
  const Graph star(3, {{0, 1}, {0, 2}});
  const Coloring phi{0, 1, 2};
  const VertexSet s = VertexSet::from_vertices({1, 2});
  const auto r = reduce(star, caps13(3), s, phi);
  json cert = reduction_certificate(star, caps13(3), s, phi, r);
  expect_valid(cert);
}

TEST(CertificateTest, RandomSolveCertificatesVerify) {
  std::mt19937_64 rng(83);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Graph g = random_graph(n, 0.5, rng());
    const CapacityMap c = oracle::random_caps(n, rng);
    expect_valid(solve_certificate(g, c, solve(g, c), "exact"));
  }
}

TEST(SurveyTest, SmallRunsHaveNoViolations) {
  const auto th0 = run_survey(5, SurveyCheck::SparseColorable);
  EXPECT_EQ(th0.total_violations(), 0);
  ASSERT_EQ(th0.levels.size(), 5U);
  EXPECT_EQ(th0.levels[4].graphs, 21);
  for (const auto& r : th0.records) {
    ASSERT_TRUE(r.coloring);
    EXPECT_TRUE(verify_coloring(r.graph, caps13(r.graph.order()), *r.coloring));
  }
  EXPECT_EQ(run_survey(5, SurveyCheck::CriticalEdgeBound).total_violations(), 0);
  EXPECT_EQ(run_survey(3, SurveyCheck::CriticalPotential).total_violations(), 0);
  EXPECT_THROW(run_survey(9, SurveyCheck::SparseColorable), std::invalid_argument);
  EXPECT_THROW(run_survey(0, SurveyCheck::SparseColorable), std::invalid_argument);
}

TEST(SurveyTest, ThreadCountDoesNotChangeResult) {
  const json one = survey_payload(run_survey(7, SurveyCheck::CriticalEdgeBound, 1));
  const json four = survey_payload(run_survey(7, SurveyCheck::CriticalEdgeBound, 4));
  EXPECT_EQ(one, four);
  expect_valid(survey_certificate(run_survey(6, SurveyCheck::SparseColorable, 2)));
}

}  // namespace
}  // namespace defcol
