#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "defcol/graph.hpp"
#include "defcol/max_flow.hpp"
#include "defcol/rational.hpp"

namespace defcol {

enum class DensityMethod { Auto, Flow, BruteForce };

inline constexpr int kBruteForceDensityLimit = 12;

struct Excess {
  Rational value;
  VertexSet witness;
};

struct Density {
  Rational value;
  VertexSet witness;
};

namespace detail {

inline bool use_brute_force(const Graph& g, DensityMethod method) {
  return method == DensityMethod::BruteForce || (method == DensityMethod::Auto && g.order() <= kBruteForceDensityLimit);
}

inline std::vector<int> edge_count_table(const Graph& g) {
  const int n = g.order();
  if (n > 24) throw std::invalid_argument("subset scan supports at most 24 vertices");
  std::vector<int> e(std::size_t{1} << n, 0);
  for (std::uint64_t mask = 1; mask < e.size(); ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    e[mask] = e[rest] + g.degree_in(v, VertexSet(rest));
  }
  return e;
}

inline Excess max_excess_scan(const Graph& g, Rational a) {
  const std::vector<int> e = edge_count_table(g);
  Excess best{Rational(0), VertexSet()};
  bool found = false;
  for (std::uint64_t mask = 1; mask < e.size(); ++mask) {
    const Rational value = Rational(e[mask]) - a * Rational(std::popcount(mask));
    if (!found || value > best.value) {
      best = {value, VertexSet(mask)};
      found = true;
    }
  }
  return best;
}

// max over A containing `forced` of q e(A) - p |A|, as a maximum-weight
// closure: source -> edge node (q), edge node -> endpoints (inf),
// vertex -> sink (p), source -> forced (inf). The optimum is q m - mincut.
inline std::pair<std::int64_t, VertexSet> forced_closure(const Graph& g, const std::vector<Edge>& edges,
                                                         std::int64_t p, std::int64_t q, int forced) {
  const int m = static_cast<int>(edges.size());
  const int n = g.order();
  const int source = 0, sink = 1, edge0 = 2, vertex0 = 2 + m;
  MaxFlow net(2 + m + n);
  for (int k = 0; k < m; ++k) {
    net.add_edge(source, edge0 + k, q);
    net.add_edge(edge0 + k, vertex0 + edges[k].u, MaxFlow::kInfinite);
    net.add_edge(edge0 + k, vertex0 + edges[k].v, MaxFlow::kInfinite);
  }
  for (int v = 0; v < n; ++v) net.add_edge(vertex0 + v, sink, p);
  net.add_edge(source, vertex0 + forced, MaxFlow::kInfinite);
  const std::int64_t cut = net.run(source, sink);
  const std::vector<bool> side = net.source_side(source);
  VertexSet a;
  for (int v = 0; v < n; ++v)
    if (side[vertex0 + v]) a.insert(v);
  return {q * m - cut, a};
}

inline Excess max_excess_flow(const Graph& g, Rational a) {
  const int n = g.order();
  if (a.num() <= 0) {
    // e(A) - a|A| is monotone in A, so the whole vertex set is optimal.
    return {Rational(g.size()) - a * Rational(n), g.vertices()};
  }
  const std::vector<Edge> edges = g.edges();
  std::int64_t best = 0;
  VertexSet witness;
  for (int v = 0; v < n; ++v) {
    auto [value, set] = forced_closure(g, edges, a.num(), a.den(), v);
    if (v == 0 || value > best) {
      best = value;
      witness = set;
    }
  }
  return {Rational(best, a.den()), witness};
}

}  // namespace detail

/// max over nonempty A of |E(G[A])| - a |A|, with a maximising set.
inline Excess max_excess(const Graph& g, Rational a, DensityMethod method = DensityMethod::Auto) {
  if (g.order() == 0) throw std::invalid_argument("max_excess needs a nonempty graph");
  return detail::use_brute_force(g, method) ? detail::max_excess_scan(g, a) : detail::max_excess_flow(g, a);
}

inline Excess max_excess(const Graph& g, std::int64_t p, std::int64_t q, DensityMethod method = DensityMethod::Auto) {
  if (q <= 0) throw std::invalid_argument("max_excess: q must be positive");
  return max_excess(g, Rational(p, q), method);
}

struct SparsityCheck {
  bool sparse = false;
  Rational max_excess;
  VertexSet witness;  // maximiser; the violating set when !sparse
};

/// (a,b)-sparse: every nonempty subgraph H has |E(H)| <= a|V(H)| + b
/// (strict: <). Induced subgraphs are the extremal ones.
inline SparsityCheck is_ab_sparse(const Graph& g, Rational a, Rational b, bool strict,
                                  DensityMethod method = DensityMethod::Auto) {
  if (a <= Rational(0)) throw std::invalid_argument("is_ab_sparse: a must be positive");
  const Excess ex = max_excess(g, a, method);
  const bool ok = strict ? ex.value < b : ex.value <= b;
  return {ok, ex.value, ex.witness};
}

/// Maximum average degree, max over nonempty A of 2|E(G[A])| / |A|.
inline Density mad(const Graph& g, DensityMethod method = DensityMethod::Auto) {
  const int n = g.order();
  if (n == 0) return {Rational(0), VertexSet()};
  if (g.size() == 0) return {Rational(0), VertexSet::single(0)};

  if (detail::use_brute_force(g, method)) {
    const std::vector<int> e = detail::edge_count_table(g);
    Density best{Rational(0), VertexSet()};
    for (std::uint64_t mask = 1; mask < e.size(); ++mask) {
      const Rational d(2 * e[mask], std::popcount(mask));
      if (best.witness.empty() || d > best.value) best = {d, VertexSet(mask)};
    }
    return best;
  }

  // The optimum is 2e/k for some 1 <= k <= n, 0 <= e <= min(m, k(k-1)/2).
  // Binary search that sorted candidate list for the largest t such that some
  // A has e(A) - (t/2)|A| >= 0.
  std::vector<Rational> candidates;
  for (int k = 1; k <= n; ++k)
    for (int e = 0; e <= std::min(g.size(), k * (k - 1) / 2); ++e) candidates.emplace_back(2 * e, k);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto probe = [&](Rational t) { return detail::max_excess_flow(g, Rational(t.num(), 2 * t.den())); };
  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[lo] feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (probe(candidates[mid]).value >= Rational(0))
      lo = mid;
    else
      hi = mid - 1;
  }
  const Rational t = candidates[lo];
  return {t, probe(t).witness};
}

}  // namespace defcol
