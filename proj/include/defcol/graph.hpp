#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "defcol/vertex_set.hpp"

namespace defcol {

struct Edge {
  int u = 0;
  int v = 0;  // u < v

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1, at most 64 vertices.
///
/// Adjacency is kept as one bitmask per vertex so that induced-subgraph
/// queries on a VertexSet cost a popcount per member.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(check_order(n), 0) {}
  Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) g.add_edge(i, j);
    return g;
  }
  static Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  }
  static Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }

  /// Adds edge uv. Self-loops, duplicates and out-of-range endpoints throw.
  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= order() || v >= order())
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (adjacent(u, v)) throw std::invalid_argument("duplicate edge");
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
    ++edge_count_;
  }

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return edge_count_; }
  VertexSet vertices() const { return VertexSet::full(order()); }

  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  VertexSet neighbors(int v) const { return VertexSet(adj_[v]); }
  int degree(int v) const { return std::popcount(adj_[v]); }
  int degree_in(int v, VertexSet s) const { return std::popcount(adj_[v] & s.bits()); }

  /// |E(G[s])|
  int induced_edges(VertexSet s) const {
    int twice = 0;
    for (std::uint64_t b = s.bits(); b != 0; b &= b - 1)
      twice += std::popcount(adj_[std::countr_zero(b)] & s.bits());
    return twice / 2;
  }

  /// Edges sorted by (u, v) with u < v.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < order(); ++u)
      for (std::uint64_t b = adj_[u] >> (u + 1); b != 0; b &= b - 1)
        out.push_back({u, u + 1 + std::countr_zero(b)});
    return out;
  }

  Graph without_edge(Edge e) const {
    if (!adjacent(e.u, e.v)) throw std::invalid_argument("edge not present");
    Graph h = *this;
    h.adj_[e.u] &= ~(std::uint64_t{1} << e.v);
    h.adj_[e.v] &= ~(std::uint64_t{1} << e.u);
    --h.edge_count_;
    return h;
  }

  /// Induced subgraph on s, re-indexed in increasing vertex order.
  Graph induced(VertexSet s) const {
    const std::vector<int> keep = s.vertices();
    Graph h(static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (adjacent(keep[i], keep[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    return h;
  }

  /// Graph whose vertex perm[v] plays the role of v.
  Graph relabeled(const std::vector<int>& perm) const {
    Graph h(order());
    for (const Edge& e : edges()) h.add_edge(perm[e.u], perm[e.v]);
    return h;
  }

  bool connected() const {
    if (order() == 0) return true;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t b = frontier; b != 0; b &= b - 1) next |= adj_[std::countr_zero(b)];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == VertexSet::full(order()).bits();
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  static int check_order(int n) {
    if (n < 0 || n > kMaxVertices) throw std::invalid_argument("graph order must lie in [0, 64]");
    return n;
  }

  std::vector<std::uint64_t> adj_;
  int edge_count_ = 0;
};

}  // namespace defcol
