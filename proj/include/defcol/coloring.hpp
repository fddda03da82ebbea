#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "defcol/graph.hpp"

namespace defcol {

/// Per-vertex tolerance: a vertex coloured i may have at most c_i
/// same-coloured neighbours; c_i = -1 forbids colour i.
struct Capacity {
  int c1 = 0;
  int c2 = 0;

  int operator[](int color) const { return color == 1 ? c1 : c2; }
  friend auto operator<=>(const Capacity&, const Capacity&) = default;
};

inline bool valid_capacity(Capacity c) { return c.c1 >= -1 && c.c1 <= 1 && c.c2 >= -1 && c.c2 <= 3; }

class CapacityMap {
 public:
  CapacityMap() = default;
  explicit CapacityMap(std::vector<Capacity> caps) : caps_(std::move(caps)) {
    for (const Capacity& c : caps_)
      if (!valid_capacity(c)) throw std::invalid_argument("capacity outside -1<=c1<=1, -1<=c2<=3");
  }
  static CapacityMap uniform(int n, Capacity c) { return CapacityMap(std::vector<Capacity>(n, c)); }

  int size() const { return static_cast<int>(caps_.size()); }
  const Capacity& operator[](int v) const { return caps_[v]; }
  const std::vector<Capacity>& values() const { return caps_; }

  friend bool operator==(const CapacityMap&, const CapacityMap&) = default;

 private:
  std::vector<Capacity> caps_;
};

inline constexpr Capacity kCap13{1, 3};

/// Colour per vertex, 1 or 2. Zero marks an uncoloured vertex.
using Coloring = std::vector<std::uint8_t>;

inline void require_matching(const Graph& g, const CapacityMap& c) {
  if (c.size() != g.order()) throw std::invalid_argument("capacity map size differs from graph order");
}

/// Same-coloured neighbour count of v under phi.
inline int same_colored_degree(const Graph& g, const Coloring& phi, int v) {
  int d = 0;
  for (int u : g.neighbors(v).vertices()) d += phi[u] == phi[v];
  return d;
}

inline bool verify_coloring(const Graph& g, const CapacityMap& c, const Coloring& phi) {
  require_matching(g, c);
  if (static_cast<int>(phi.size()) != g.order()) throw std::invalid_argument("coloring size differs from graph order");
  for (std::uint8_t col : phi)
    if (col != 1 && col != 2) throw std::invalid_argument("coloring is not total");
  for (int v = 0; v < g.order(); ++v)
    if (same_colored_degree(g, phi, v) > c[v][phi[v]]) return false;
  return true;
}

namespace detail {

class Backtracker {
 public:
  Backtracker(const Graph& g, const CapacityMap& c) : g_(g), c_(c), n_(g.order()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
    color_.assign(n_, 0);
    same_.assign(n_, 0);
    count_.assign(n_, {0, 0, 0});
  }

  std::optional<Coloring> run() {
    for (int v = 0; v < n_; ++v)
      if (c_[v].c1 < 0 && c_[v].c2 < 0) return std::nullopt;
    if (!search(0)) return std::nullopt;
    return color_;
  }

 private:
  // Colour i is open for uncoloured w if w itself tolerates its colour-i
  // neighbours and no colour-i neighbour is already saturated.
  bool open(int w, int i) const {
    if (count_[w][i] > c_[w][i]) return false;
    for (int u : g_.neighbors(w).vertices())
      if (color_[u] == i && same_[u] >= c_[u][i]) return false;
    return true;
  }

  bool search(int depth) {
    if (depth == n_) return true;
    const int v = order_[depth];
    for (int i : {2, 1}) {
      if (!open(v, i)) continue;
      assign(v, i);
      if (consistent() && search(depth + 1)) return true;
      unassign(v, i);
    }
    return false;
  }

  bool consistent() const {
    for (int w = 0; w < n_; ++w)
      if (color_[w] == 0 && !open(w, 1) && !open(w, 2)) return false;
    return true;
  }

  void assign(int v, int i) {
    color_[v] = static_cast<std::uint8_t>(i);
    same_[v] = count_[v][i];
    for (int u : g_.neighbors(v).vertices()) {
      ++count_[u][i];
      if (color_[u] == i) ++same_[u];
    }
  }

  void unassign(int v, int i) {
    for (int u : g_.neighbors(v).vertices()) {
      --count_[u][i];
      if (color_[u] == i) --same_[u];
    }
    color_[v] = 0;
    same_[v] = 0;
  }

  const Graph& g_;
  const CapacityMap& c_;
  int n_;
  std::vector<int> order_;
  Coloring color_;
  std::vector<int> same_;                 // same-coloured neighbours of a coloured vertex
  std::vector<std::array<int, 3>> count_;  // coloured neighbours per colour
};

}  // namespace detail

/// Exact c-colourability: backtracking in descending-degree order (ties by id),
/// colour 2 before colour 1, with forward checking. std::nullopt means UNSAT.
inline std::optional<Coloring> solve(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  return detail::Backtracker(g, c).run();
}

inline std::optional<Coloring> solve_13(const Graph& g) { return solve(g, CapacityMap::uniform(g.order(), kCap13)); }

/// Exhaustive 2^n scan; the reference the backtracker is checked against.
inline std::optional<Coloring> solve_brute_force(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  const int n = g.order();
  if (n > 26) throw std::invalid_argument("brute-force colouring supports at most 26 vertices");
  Coloring phi(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int v = 0; v < n; ++v) phi[v] = ((mask >> v) & 1U) ? 2 : 1;
    if (verify_coloring(g, c, phi)) return phi;
  }
  return std::nullopt;
}

struct EdgeWitness {
  Edge edge;
  Coloring coloring;  // valid on g - edge
};

struct CriticalityReport {
  bool critical = false;
  std::optional<Coloring> coloring;        // set when g itself is colourable
  std::vector<EdgeWitness> edge_witnesses;  // every edge, when g is critical
  std::vector<std::pair<int, Coloring>> isolated_witnesses;  // colourings of g - v for isolated v
  std::optional<Edge> blocking_edge;        // g - e still uncolourable
  std::optional<int> blocking_isolated;     // g - v still uncolourable
};

/// Criticality: uncolourable, while every proper subgraph is colourable.
/// Every proper subgraph lies inside some g - e, or inside g - v for an
/// isolated v, so by monotonicity these are the only checks needed.
inline CriticalityReport is_critical(const Graph& g, const CapacityMap& c) {
  CriticalityReport rep;
  rep.coloring = solve(g, c);
  if (rep.coloring) return rep;
  for (const Edge& e : g.edges()) {
    auto psi = solve(g.without_edge(e), c);
    if (!psi) {
      rep.blocking_edge = e;
      rep.edge_witnesses.clear();
      return rep;
    }
    rep.edge_witnesses.push_back({e, std::move(*psi)});
  }
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) != 0) continue;
    const VertexSet rest = g.vertices() - VertexSet::single(v);
    std::vector<Capacity> caps;
    for (int u : rest.vertices()) caps.push_back(c[u]);
    auto psi = solve(g.induced(rest), CapacityMap(std::move(caps)));
    if (!psi) {
      rep.blocking_isolated = v;
      rep.edge_witnesses.clear();
      rep.isolated_witnesses.clear();
      return rep;
    }
    rep.isolated_witnesses.emplace_back(v, std::move(*psi));
  }
  rep.critical = true;
  return rep;
}

}  // namespace defcol
