#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "defcol/coloring.hpp"
#include "defcol/enumerate.hpp"
#include "defcol/graph.hpp"
#include "defcol/graph6.hpp"
#include "defcol/potential.hpp"
#include "defcol/rational.hpp"
#include "defcol/sparsity.hpp"

namespace defcol {

enum class SurveyCheck {
  SparseColorable,      // th0: 9e(A) <= 14|A| + 5 for all A  =>  (1,3)-colourable
  CriticalEdgeBound,    // th0critical: (1,3)-critical  =>  14n - 9m <= -6
  CriticalPotential,    // potential-th1: (1,3)-critical  =>  min potential <= -6
};

inline std::string to_string(SurveyCheck check) {
  switch (check) {
    case SurveyCheck::SparseColorable: return "th0";
    case SurveyCheck::CriticalEdgeBound: return "th0critical";
    case SurveyCheck::CriticalPotential: return "potential-th1";
  }
  return "?";
}

inline SurveyCheck survey_check_from_string(const std::string& s) {
  if (s == "th0") return SurveyCheck::SparseColorable;
  if (s == "th0critical") return SurveyCheck::CriticalEdgeBound;
  if (s == "potential-th1") return SurveyCheck::CriticalPotential;
  throw std::invalid_argument("unknown survey check: " + s);
}

inline const Rational kSparsityA{14, 9};
inline const Rational kSparsityB{5, 9};

struct SurveyRecord {
  Graph graph;
  bool checked = false;      // premise held (sparse / critical)
  bool violation = false;
  std::optional<Coloring> coloring;  // th0 witness
  int edge_bound = 0;        // 14n - 9m
  std::optional<PotentialMinimum> potential;
};

struct SurveyLevel {
  int n = 0;
  int graphs = 0;
  int checked = 0;
  int violations = 0;
  int critical = 0;
};

struct SurveyResult {
  SurveyCheck check = SurveyCheck::SparseColorable;
  int max_n = 0;
  std::vector<SurveyLevel> levels;
  std::vector<SurveyRecord> records;  // checked graphs only, in enumeration order

  int total_violations() const {
    int v = 0;
    for (const auto& l : levels) v += l.violations;
    return v;
  }
};

inline SurveyRecord survey_one(const Graph& g, SurveyCheck check) {
  SurveyRecord r;
  r.graph = g;
  const CapacityMap caps = CapacityMap::uniform(g.order(), kCap13);
  if (check == SurveyCheck::SparseColorable) {
    // 9e(A) - 14|A| <= 5  <=>  e(A) - (14/9)|A| <= 5/9
    if (!is_ab_sparse(g, kSparsityA, kSparsityB, false).sparse) return r;
    r.checked = true;
    r.coloring = solve(g, caps);
    r.violation = !r.coloring || !verify_coloring(g, caps, *r.coloring);
    return r;
  }
  if (!is_critical(g, caps).critical) return r;
  r.checked = true;
  r.edge_bound = 14 * g.order() - 9 * g.size();
  if (check == SurveyCheck::CriticalEdgeBound) {
    r.violation = r.edge_bound > -6;
  } else {
    r.potential = min_potential(g, caps, SubsetFilter::AllNonempty);
    r.violation = r.potential->value > -6;
  }
  return r;
}

/// Runs the check over every connected graph with 1..max_n vertices, one per
/// isomorphism class. Work is sharded over threads; results are merged in
/// canonical enumeration order.
inline SurveyResult run_survey(int max_n, SurveyCheck check, int threads = 1) {
  if (max_n < 1 || max_n > kMaxEnumerationOrder) throw std::invalid_argument("survey max-n must lie in [1, 8]");
  SurveyResult res;
  res.check = check;
  res.max_n = max_n;
  threads = std::max(1, threads);
  for (int n = 1; n <= max_n; ++n) {
    const std::vector<Graph> graphs = enumerate_graphs(n, true);
    std::vector<SurveyRecord> out(graphs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < graphs.size();) out[i] = survey_one(graphs[i], check);
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    SurveyLevel level{n, static_cast<int>(graphs.size()), 0, 0, 0};
    for (auto& r : out) {
      if (!r.checked) continue;
      ++level.checked;
      level.violations += r.violation;
      if (check != SurveyCheck::SparseColorable) ++level.critical;
      res.records.push_back(std::move(r));
    }
    res.levels.push_back(level);
  }
  return res;
}

}  // namespace defcol
