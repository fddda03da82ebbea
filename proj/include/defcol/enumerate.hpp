#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "defcol/graph.hpp"

namespace defcol {

inline constexpr int kMaxCanonicalOrder = 11;  // n(n-1)/2 code bits must fit in 64
inline constexpr int kMaxEnumerationOrder = 8;

/// Upper-triangle bit string of g in graph6 column order, first pair in the
/// most significant position.
inline std::uint64_t adjacency_code(const Graph& g) {
  std::uint64_t code = 0;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | (g.adjacent(i, j) ? 1U : 0U);
  return code;
}

inline Graph graph_from_code(int n, std::uint64_t code) {
  Graph g(n);
  int bit = n * (n - 1) / 2;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if ((code >> --bit) & 1U) g.add_edge(i, j);
  return g;
}

/// Minimum of adjacency_code over all n! relabelings.
///
/// The code is column-major, so a lexicographic minimum can be built one
/// column at a time: keep every partial labeling whose prefix is minimal,
/// extend each by every unused vertex, and keep the extensions achieving the
/// smallest next column. The survivors after the last column are exactly the
/// labelings attaining the global minimum.
inline std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > kMaxCanonicalOrder) throw std::invalid_argument("canonical form supports at most 11 vertices");
  if (n <= 1) return 0;

  struct Partial {
    std::array<std::int8_t, kMaxCanonicalOrder> pos{};
    std::uint64_t used = 0;
  };
  std::vector<Partial> level, next;
  level.reserve(n);
  for (int v = 0; v < n; ++v) {
    Partial p;
    p.pos[0] = static_cast<std::int8_t>(v);
    p.used = std::uint64_t{1} << v;
    level.push_back(p);
  }

  std::uint64_t code = 0;
  for (int k = 1; k < n; ++k) {
    std::uint64_t best = ~std::uint64_t{0};
    next.clear();
    for (const Partial& p : level) {
      for (int w = 0; w < n; ++w) {
        if ((p.used >> w) & 1U) continue;
        std::uint64_t col = 0;
        for (int i = 0; i < k; ++i) col = (col << 1) | (g.adjacent(p.pos[i], w) ? 1U : 0U);
        if (col > best) continue;
        if (col < best) {
          best = col;
          next.clear();
        }
        Partial q = p;
        q.pos[k] = static_cast<std::int8_t>(w);
        q.used |= std::uint64_t{1} << w;
        next.push_back(q);
      }
    }
    code = (code << k) | best;
    level.swap(next);
  }
  return code;
}

inline Graph canonical_form(const Graph& g) { return graph_from_code(g.order(), canonical_code(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

/// One representative per isomorphism class on n vertices, in increasing
/// canonical-code order. Each representative is in canonical form.
///
/// Graphs on k vertices are generated by attaching a new vertex to every
/// neighbourhood in each class on k-1 vertices. For connected graphs only
/// connected parents are needed: every connected graph has a non-cut vertex.
inline std::vector<Graph> enumerate_graphs(int n, bool connected_only) {
  if (n < 1 || n > kMaxEnumerationOrder) throw std::invalid_argument("enumeration supports 1 <= n <= 8");
  std::vector<std::uint64_t> codes{0};  // K1
  for (int k = 2; k <= n; ++k) {
    std::vector<std::uint64_t> found;
    for (std::uint64_t parent_code : codes) {
      const Graph parent = graph_from_code(k - 1, parent_code);
      const std::uint64_t first = connected_only ? 1 : 0;
      for (std::uint64_t mask = first; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
        Graph child(k);
        for (const Edge& e : parent.edges()) child.add_edge(e.u, e.v);
        for (int u = 0; u < k - 1; ++u)
          if ((mask >> u) & 1U) child.add_edge(u, k - 1);
        found.push_back(canonical_code(child));
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    codes.swap(found);
  }
  std::vector<Graph> out;
  out.reserve(codes.size());
  for (std::uint64_t c : codes) out.push_back(graph_from_code(n, c));
  return out;
}

/// G(n, p): each pair independently with probability p, reproducible per seed.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < p) g.add_edge(i, j);
    }
  return g;
}

}  // namespace defcol
