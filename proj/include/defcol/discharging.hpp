#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "defcol/coloring.hpp"
#include "defcol/graph.hpp"
#include "defcol/potential.hpp"

namespace defcol {

/// Per-vertex charges in half units (stored value = 2 * charge).
class ChargeMap {
 public:
  ChargeMap() = default;
  explicit ChargeMap(std::vector<std::int64_t> doubled) : doubled_(std::move(doubled)) {}

  int size() const { return static_cast<int>(doubled_.size()); }
  std::int64_t doubled(int v) const { return doubled_[v]; }
  double value(int v) const { return static_cast<double>(doubled_[v]) / 2.0; }
  std::int64_t doubled_total() const { return std::accumulate(doubled_.begin(), doubled_.end(), std::int64_t{0}); }
  const std::vector<std::int64_t>& doubled_values() const { return doubled_; }

 private:
  std::vector<std::int64_t> doubled_;
};

/// h(v) = rho(v) - 4.5 d(v). Sums to rho(V) because each edge is shared by two ends.
inline ChargeMap initial_charges(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  std::vector<std::int64_t> h(g.order());
  for (int v = 0; v < g.order(); ++v) h[v] = 2 * rho_vertex(c, v) - 9 * g.degree(v);
  return ChargeMap(std::move(h));
}

/// Every top vertex gives 2.5 to each neighbour. Applied literally, so
/// adjacent top vertices both give and receive.
inline ChargeMap discharge(const Graph& g, const CapacityMap& c) {
  const ChargeMap h = initial_charges(g, c);
  const VertexSet tops = top_vertices(g, c);
  std::vector<std::int64_t> ch = h.doubled_values();
  for (int x : tops.vertices())
    for (int u : g.neighbors(x).vertices()) {
      ch[x] -= 5;
      ch[u] += 5;
    }
  return ChargeMap(std::move(ch));
}

/// Closed form for a normal vertex: 1 + 4c1 + 3c2 - 4.5 d1 - 2 d2, with d1/d2
/// counting normal/top neighbours. Returned doubled.
inline std::int64_t normal_charge_closed_form(const Graph& g, const CapacityMap& c, int v) {
  const VertexSet tops = top_vertices(g, c);
  const int d2 = g.degree_in(v, tops);
  const int d1 = g.degree(v) - d2;
  return 2 * (1 + 4 * c[v].c1 + 3 * c[v].c2) - 9 * d1 - 4 * d2;
}

struct Finding {
  int vertex = 0;
  char rule = 'a';
  std::string detail;
};

/// Configurations that cannot occur in a minimal counterexample:
///   a  (-1,0)-vertex
///   b  (0,-1)-vertex
///   c  rho(v) <= 0
///   d  (1,3)-vertex with exactly one normal neighbour and <= 4 top neighbours
///   e  (1,2)-vertex with >= 1 normal neighbour and <= 3 top neighbours
///   f  (1,3)-vertex of degree <= 6 whose neighbours are all top
///   g  (1,2)-vertex of degree <= 5 whose neighbours are all top
///   h  positive charge after discharging
/// Findings come out ordered by vertex, then rule.
inline std::vector<Finding> forbidden_configurations(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  const VertexSet tops = top_vertices(g, c);
  const ChargeMap ch = discharge(g, c);
  std::vector<Finding> out;
  auto report = [&](int v, char rule, std::string detail) { out.push_back({v, rule, std::move(detail)}); };

  for (int v = 0; v < g.order(); ++v) {
    const Capacity cv = c[v];
    const int rho = rho_vertex(c, v);
    const int top_nbrs = g.degree_in(v, tops);
    const int normal_nbrs = g.degree(v) - top_nbrs;
    const std::string nbrs = "normal=" + std::to_string(normal_nbrs) + " top=" + std::to_string(top_nbrs);

    if (cv == Capacity{-1, 0}) report(v, 'a', "(-1,0)-vertex");
    if (cv == Capacity{0, -1}) report(v, 'b', "(0,-1)-vertex");
    if (rho <= 0) report(v, 'c', "potential " + std::to_string(rho));
    if (cv == Capacity{1, 3} && normal_nbrs == 1 && top_nbrs <= 4) report(v, 'd', nbrs);
    if (cv == Capacity{1, 2} && normal_nbrs >= 1 && top_nbrs <= 3) report(v, 'e', nbrs);
    if (cv == Capacity{1, 3} && g.degree(v) <= 6 && normal_nbrs == 0) report(v, 'f', nbrs);
    if (cv == Capacity{1, 2} && g.degree(v) <= 5 && normal_nbrs == 0) report(v, 'g', nbrs);
    if (ch.doubled(v) > 0) report(v, 'h', "charge " + std::to_string(ch.doubled(v)) + "/2");
  }
  return out;
}

}  // namespace defcol
