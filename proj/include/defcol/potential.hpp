#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "defcol/coloring.hpp"
#include "defcol/graph.hpp"

namespace defcol {

// Potential of a vertex: 1 + 4 c1 + 3 c2, in [-6, 14].
// Potential of a set A: sum of vertex potentials minus 9 |E(G[A])|.

inline int rho_vertex(const CapacityMap& c, int v) { return 1 + 4 * c[v].c1 + 3 * c[v].c2; }

inline int rho_set(const Graph& g, const CapacityMap& c, VertexSet a) {
  int total = 0;
  for (int v : a.vertices()) total += rho_vertex(c, v);
  return total - 9 * g.induced_edges(a);
}

/// Degree 2 and potential 14; every other vertex is normal.
inline bool is_top(const Graph& g, const CapacityMap& c, int v) { return g.degree(v) == 2 && rho_vertex(c, v) == 14; }

inline VertexSet top_vertices(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  VertexSet t;
  for (int v = 0; v < g.order(); ++v)
    if (is_top(g, c, v)) t.insert(v);
  return t;
}

enum class SubsetFilter {
  AllNonempty,
  ProperNonempty,
  Nontrivial,  // |A| >= 2, A != V, A != V - x for a top vertex x
};

enum class MinimizeMethod { Pruned, Scan };

struct PotentialMinimum {
  int value = 0;
  VertexSet witness;
};

struct EmptySearchSpace : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

struct FilterCheck {
  SubsetFilter filter;
  VertexSet full;
  VertexSet tops;

  bool accepts(VertexSet a) const {
    if (a.empty()) return false;
    if (filter == SubsetFilter::AllNonempty) return true;
    if (a == full) return false;
    if (filter == SubsetFilter::ProperNonempty) return true;
    if (a.size() <= 1) return false;
    const VertexSet missing = full - a;
    return !(missing.size() == 1 && missing.subset_of(tops));
  }
};

inline void offer(PotentialMinimum& best, bool& found, int value, VertexSet a) {
  if (!found || value < best.value || (value == best.value && a.bits() < best.witness.bits())) {
    best = {value, a};
    found = true;
  }
}

// Branch on vertices in id order. Adding X (a subset of the undecided pool R)
// to A costs at most deg_{A u R}(x) edges per x in X, so
// rho(A u X) >= rho(A) + sum over R of min(0, rho(v) - 9 deg_{A u R}(v)).
class PrunedSearch {
 public:
  PrunedSearch(const Graph& g, const CapacityMap& c, FilterCheck check)
      : g_(g), c_(c), check_(check), n_(g.order()) {}

  std::optional<PotentialMinimum> run() {
    dfs(0, VertexSet(), 0);
    if (!found_) return std::nullopt;
    return best_;
  }

 private:
  int bound(int idx, VertexSet a, int rho_a) const {
    const VertexSet pool(VertexSet::full(n_).bits() & ~VertexSet::full(idx).bits());
    const VertexSet reach = a | pool;
    int lb = rho_a;
    for (int v : pool.vertices()) {
      const int gain = rho_vertex(c_, v) - 9 * g_.degree_in(v, reach);
      if (gain < 0) lb += gain;
    }
    return lb;
  }

  void dfs(int idx, VertexSet a, int rho_a) {
    if (found_ && bound(idx, a, rho_a) > best_.value) return;
    if (idx == n_) {
      if (check_.accepts(a)) offer(best_, found_, rho_a, a);
      return;
    }
    // Excluding first visits numerically smaller masks earlier.
    dfs(idx + 1, a, rho_a);
    VertexSet with = a;
    with.insert(idx);
    dfs(idx + 1, with, rho_a + rho_vertex(c_, idx) - 9 * g_.degree_in(idx, a));
  }

  const Graph& g_;
  const CapacityMap& c_;
  FilterCheck check_;
  int n_;
  PotentialMinimum best_;
  bool found_ = false;
};

}  // namespace detail

/// Plain 2^n table of rho over all subsets, built incrementally by lowest bit.
inline std::vector<int> potential_table(const Graph& g, const CapacityMap& c) {
  const int n = g.order();
  if (n > 22) throw std::invalid_argument("potential table supports at most 22 vertices");
  std::vector<int> table(std::size_t{1} << n, 0);
  for (std::uint64_t mask = 1; mask < table.size(); ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    table[mask] = table[rest] + rho_vertex(c, v) - 9 * g.degree_in(v, VertexSet(rest));
  }
  return table;
}

/// Minimum potential over the subsets admitted by the filter; among
/// minimisers the numerically smallest bitmask is returned.
inline PotentialMinimum min_potential(const Graph& g, const CapacityMap& c, SubsetFilter filter,
                                      MinimizeMethod method = MinimizeMethod::Pruned) {
  require_matching(g, c);
  if (g.order() == 0) throw std::invalid_argument("min_potential needs a nonempty graph");
  const detail::FilterCheck check{filter, g.vertices(), top_vertices(g, c)};

  if (method == MinimizeMethod::Scan) {
    const std::vector<int> table = potential_table(g, c);
    PotentialMinimum best;
    bool found = false;
    for (std::uint64_t mask = 1; mask < table.size(); ++mask)
      if (check.accepts(VertexSet(mask))) detail::offer(best, found, table[mask], VertexSet(mask));
    if (!found) throw EmptySearchSpace("no vertex subset passes the filter");
    return best;
  }
  auto best = detail::PrunedSearch(g, c, check).run();
  if (!best) throw EmptySearchSpace("no vertex subset passes the filter");
  return *best;
}

/// rho(A) + rho(B) >= rho(A u B) + rho(A n B).
inline bool check_submodularity(const Graph& g, const CapacityMap& c, VertexSet a, VertexSet b) {
  return rho_set(g, c, a) + rho_set(g, c, b) >= rho_set(g, c, a | b) + rho_set(g, c, a & b);
}

// ---------------------------------------------------------------------------
// Reduction (G^phi, c^phi): replace a coloured set S by one or two gadget
// vertices that transmit the colour constraints S imposes on its boundary.

struct ReductionResult {
  Graph graph;
  CapacityMap caps;
  VertexSet added;                // gadget vertices, ids at the end
  int reduction_case = 0;         // 1: N1 empty, 2: N2 empty, 3: both nonempty
  std::vector<int> original;      // reduced id -> original id, -1 for gadget vertices
  std::optional<int> y1;
  std::optional<int> y2;
};

struct ReductionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr Capacity kGadgetY1Alone{0, -1};
inline constexpr Capacity kGadgetY1Paired{0, 3};
inline constexpr Capacity kGadgetY2{-1, 0};

/// phi is indexed by the vertices of g; only entries in s are read.
inline ReductionResult reduce(const Graph& g, const CapacityMap& c, VertexSet s, const Coloring& phi) {
  require_matching(g, c);
  const int n = g.order();
  if (s.empty()) throw ReductionError("reduce: S is empty");
  if (!s.subset_of(g.vertices())) throw ReductionError("reduce: S is not a vertex subset");
  if (s == g.vertices()) throw ReductionError("reduce: S must be a proper subset");
  if (static_cast<int>(phi.size()) != n) throw ReductionError("reduce: colouring size differs from graph order");

  VertexSet cls[3];
  for (int v : s.vertices()) {
    if (phi[v] != 1 && phi[v] != 2) throw ReductionError("reduce: colouring is not total on S");
    cls[phi[v]].insert(v);
  }
  for (int v : s.vertices()) {
    const int same = g.degree_in(v, cls[phi[v]]);
    if (same > c[v][phi[v]]) throw ReductionError("reduce: colouring is not valid on G[S]");
  }

  const VertexSet rest = g.vertices() - s;
  VertexSet boundary[3];
  for (int y : rest.vertices())
    for (int i : {1, 2})
      if (!(g.neighbors(y) & cls[i]).empty()) boundary[i].insert(y);
  if (boundary[1].empty() && boundary[2].empty())
    throw ReductionError("reduce: S has no neighbours outside it (graph is disconnected)");

  ReductionResult r;
  const std::vector<int> kept = rest.vertices();
  std::vector<int> index(n, -1);
  for (std::size_t k = 0; k < kept.size(); ++k) index[kept[k]] = static_cast<int>(k);
  r.original = kept;

  std::vector<Capacity> caps;
  for (int v : kept) caps.push_back(c[v]);
  int next = static_cast<int>(kept.size());
  const bool need1 = !boundary[1].empty();
  const bool need2 = !boundary[2].empty();
  if (need1) {
    r.y1 = next++;
    caps.push_back(need2 ? kGadgetY1Paired : kGadgetY1Alone);
    r.original.push_back(-1);
  }
  if (need2) {
    r.y2 = next++;
    caps.push_back(kGadgetY2);
    r.original.push_back(-1);
  }
  r.reduction_case = !need1 ? 1 : (!need2 ? 2 : 3);

  r.graph = Graph(next);
  for (const Edge& e : g.edges())
    if (rest.contains(e.u) && rest.contains(e.v)) r.graph.add_edge(index[e.u], index[e.v]);
  if (r.y1)
    for (int y : boundary[1].vertices()) r.graph.add_edge(index[y], *r.y1);
  if (r.y2)
    for (int y : boundary[2].vertices()) r.graph.add_edge(index[y], *r.y2);
  if (r.y1 && r.y2) r.graph.add_edge(*r.y1, *r.y2);
  r.caps = CapacityMap(std::move(caps));
  for (int k = static_cast<int>(kept.size()); k < next; ++k) r.added.insert(k);
  return r;
}

/// Union of phi on S and psi (a colouring of the reduced graph) on V - S.
inline Coloring glue_coloring(const Graph& g, VertexSet s, const Coloring& phi, const ReductionResult& r,
                              const Coloring& psi) {
  Coloring out(g.order(), 0);
  for (int v : s.vertices()) out[v] = phi[v];
  for (std::size_t k = 0; k < r.original.size(); ++k)
    if (r.original[k] >= 0) out[r.original[k]] = psi[k];
  return out;
}

}  // namespace defcol
