#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "defcol/coloring.hpp"
#include "defcol/graph.hpp"
#include "defcol/potential.hpp"

namespace defcol {

/// G_q: the normal vertices of G, the real edges among them, and one
/// quasi-edge per top vertex joining that vertex's two neighbours. Parallel
/// quasi-edges are allowed.
struct QuasiGraph {
  struct QuasiEdge {
    int a = 0;    // quasi-graph indices
    int b = 0;
    int top = 0;  // original id of the top vertex it stands for
  };

  std::vector<int> vertices;         // quasi index -> original id
  std::vector<int> index;            // original id -> quasi index, -1 for tops
  std::vector<Edge> real_edges;      // quasi indices, u < v
  std::vector<QuasiEdge> quasi_edges;  // ordered by top id

  int order() const { return static_cast<int>(vertices.size()); }

  /// Real-edge degree d1(v) and quasi-edge degree d2(v).
  int real_degree(int v) const {
    return static_cast<int>(std::count_if(real_edges.begin(), real_edges.end(),
                                          [v](const Edge& e) { return e.u == v || e.v == v; }));
  }
  int quasi_degree(int v) const {
    return static_cast<int>(std::count_if(quasi_edges.begin(), quasi_edges.end(),
                                          [v](const QuasiEdge& e) { return e.a == v || e.b == v; }));
  }
};

struct QuasiGraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline QuasiGraph build_quasi_graph(const Graph& g, const CapacityMap& c) {
  require_matching(g, c);
  const VertexSet tops = top_vertices(g, c);
  for (int x : tops.vertices())
    if (!(g.neighbors(x) & tops).empty()) throw QuasiGraphError("adjacent top vertices: quasi-edge graph undefined");

  QuasiGraph q;
  q.index.assign(g.order(), -1);
  for (int v = 0; v < g.order(); ++v)
    if (!tops.contains(v)) {
      q.index[v] = q.order();
      q.vertices.push_back(v);
    }
  for (const Edge& e : g.edges())
    if (!tops.contains(e.u) && !tops.contains(e.v)) q.real_edges.push_back({q.index[e.u], q.index[e.v]});
  for (int x : tops.vertices()) {
    const std::vector<int> ends = g.neighbors(x).vertices();
    q.quasi_edges.push_back({q.index[ends[0]], q.index[ends[1]], x});
  }
  return q;
}

/// Colour per quasi-graph vertex (1 or 2).
using Assignment = std::vector<std::uint8_t>;

/// S(phi) in quarter units. S = sum c_{phi(v)}(v) - 1/2 sum d*_phi(v), where
/// d*_phi(v) counts same-coloured real neighbours plus half the incident
/// conflicting quasi-edges.
struct Score {
  std::int64_t quarters = 0;

  double value() const { return static_cast<double>(quarters) / 4.0; }
  friend auto operator<=>(const Score&, const Score&) = default;
};

namespace detail {

// Summing d* over vertices counts each same-coloured real edge twice and
// each conflicting quasi-edge twice at weight 1/2, hence
// 4S = 4 sum c - 4 |same real edges| - 2 |conflicting quasi-edges|.
inline Score score_from_counts(std::int64_t cap_sum, std::int64_t same_real, std::int64_t conflicting) {
  return {4 * cap_sum - 4 * same_real - 2 * conflicting};
}

class ScoreModel {
 public:
  ScoreModel(const QuasiGraph& q, const CapacityMap& c) : n_(q.order()), caps_(n_), real_(n_, 0), quasi_(n_) {
    for (int v = 0; v < n_; ++v) caps_[v] = c[q.vertices[v]];
    for (const Edge& e : q.real_edges) {
      real_[e.u] |= std::uint64_t{1} << e.v;
      real_[e.v] |= std::uint64_t{1} << e.u;
    }
    for (const auto& e : q.quasi_edges) {
      quasi_[e.a].push_back(e.b);
      quasi_[e.b].push_back(e.a);
    }
  }

  int order() const { return n_; }

  // mask bit v set <=> v has colour 2
  Score evaluate(std::uint64_t mask) const {
    std::int64_t cap = 0, same = 0, conf = 0;
    for (int v = 0; v < n_; ++v) {
      const bool two = (mask >> v) & 1U;
      cap += two ? caps_[v].c2 : caps_[v].c1;
      const std::uint64_t same_side = two ? mask : ~mask;
      same += std::popcount(real_[v] & same_side);
      for (int u : quasi_[v]) conf += (((mask >> u) & 1U) != two);
    }
    return score_from_counts(cap, same / 2, conf / 2);
  }

  /// Change in 4S when v switches colour.
  std::int64_t flip_delta(std::uint64_t mask, int v) const {
    const bool two = (mask >> v) & 1U;
    const std::int64_t dcap = two ? caps_[v].c1 - caps_[v].c2 : caps_[v].c2 - caps_[v].c1;
    const int nbr_two = std::popcount(real_[v] & mask);
    const int nbr_one = std::popcount(real_[v]) - nbr_two;
    const int dsame = two ? nbr_one - nbr_two : nbr_two - nbr_one;
    int q_two = 0;
    for (int u : quasi_[v]) q_two += (mask >> u) & 1U;
    const int q_one = static_cast<int>(quasi_[v].size()) - q_two;
    // conflicting before: neighbours of the other colour
    const int dconf = two ? q_two - q_one : q_one - q_two;
    return 4 * dcap - 4 * dsame - 2 * dconf;
  }

 private:
  int n_;
  std::vector<Capacity> caps_;
  std::vector<std::uint64_t> real_;
  std::vector<std::vector<int>> quasi_;
};

inline std::uint64_t to_mask(const Assignment& psi) {
  std::uint64_t m = 0;
  for (std::size_t v = 0; v < psi.size(); ++v)
    if (psi[v] == 2) m |= std::uint64_t{1} << v;
  return m;
}

inline Assignment from_mask(std::uint64_t mask, int n) {
  Assignment a(n);
  for (int v = 0; v < n; ++v) a[v] = ((mask >> v) & 1U) ? 2 : 1;
  return a;
}

/// Lexicographic order of colour vectors (vertex 0 first, colour 1 < 2).
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  return ((a >> std::countr_zero(a ^ b)) & 1U) == 0;
}

}  // namespace detail

inline Score score(const QuasiGraph& q, const CapacityMap& c, const Assignment& phi) {
  if (static_cast<int>(phi.size()) != q.order()) throw std::invalid_argument("assignment size differs from quasi-graph order");
  if (q.order() > kMaxVertices) throw std::invalid_argument("quasi-graph too large");
  return detail::ScoreModel(q, c).evaluate(detail::to_mask(phi));
}

enum class MaximizeMode { Exact, LocalSearch };

inline constexpr int kExactScoreLimit = 24;

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  int restarts = 8;
};

/// Exact: a global maximiser of S, lexicographically least among maximisers.
/// LocalSearch: a single-flip local maximum; restart r is seeded with seed + r.
inline Assignment maximize_score(const QuasiGraph& q, const CapacityMap& c, MaximizeMode mode,
                                 LocalSearchOptions opts = {}) {
  const int n = q.order();
  if (n > kMaxVertices) throw std::invalid_argument("quasi-graph too large");
  const detail::ScoreModel model(q, c);

  if (mode == MaximizeMode::Exact) {
    if (n > kExactScoreLimit) throw std::invalid_argument("exact score maximisation supports at most 24 vertices");
    // Gray-code walk: consecutive masks differ in one vertex.
    std::uint64_t mask = 0, best_mask = 0;
    std::int64_t cur = model.evaluate(0).quarters, best = cur;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
      const int v = std::countr_zero(i);
      cur += model.flip_delta(mask, v);
      mask ^= std::uint64_t{1} << v;
      if (cur > best || (cur == best && detail::lex_less(mask, best_mask))) {
        best = cur;
        best_mask = mask;
      }
    }
    return detail::from_mask(best_mask, n);
  }

  std::uint64_t best_mask = 0;
  std::int64_t best = 0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    std::uint64_t mask = 0;
    if (r == 0) {
      for (int v = 0; v < n; ++v)
        if (c[q.vertices[v]].c2 >= c[q.vertices[v]].c1) mask |= std::uint64_t{1} << v;
    } else {
      std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(r));
      mask = n == 64 ? rng() : rng() & ((std::uint64_t{1} << n) - 1);
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (int v = 0; v < n; ++v)
        if (model.flip_delta(mask, v) > 0) {
          mask ^= std::uint64_t{1} << v;
          improved = true;
        }
    }
    const std::int64_t s = model.evaluate(mask).quarters;
    if (r == 0 || s > best || (s == best && detail::lex_less(mask, best_mask))) {
      best = s;
      best_mask = mask;
    }
  }
  return detail::from_mask(best_mask, n);
}

/// Outcome of lifting an assignment of G_q to a colouring of G.
struct Extension {
  std::optional<Coloring> coloring;
  int extension_case = 0;  // 1 or 2; 0 when rejected before orienting
  std::string failure;
  /// (tail, head) in quasi indices per quasi-edge; (-1,-1) if not conflicting.
  std::vector<std::pair<int, int>> orientation;
  /// Arcs to or from the apex vertex (index q.order()) added for eulerisation.
  std::vector<std::pair<int, int>> apex_arcs;
  /// Case 1 path as quasi-edge ids, from the slack vertex to the deficient one.
  std::vector<int> path;
};

/// Twice the slack c_{psi(v)}(v) - d*_psi(v) for every quasi vertex.
inline std::vector<int> doubled_slack(const QuasiGraph& q, const CapacityMap& c, const Assignment& psi) {
  std::vector<int> s(q.order());
  for (int v = 0; v < q.order(); ++v) s[v] = 2 * c[q.vertices[v]][psi[v]];
  for (const Edge& e : q.real_edges)
    if (psi[e.u] == psi[e.v]) {
      s[e.u] -= 2;
      s[e.v] -= 2;
    }
  for (const auto& e : q.quasi_edges)
    if (psi[e.a] != psi[e.b]) {
      s[e.a] -= 1;
      s[e.b] -= 1;
    }
  return s;
}

/// Lifts psi to G. Conflicting quasi-edges (endpoints coloured differently)
/// are oriented so that each normal vertex is the tail of about half of its
/// conflicting quasi-edges; the top vertex then copies its tail's colour, and
/// the tail absorbs one same-coloured neighbour. Non-conflicting top vertices
/// take the colour opposite to both neighbours. If exactly one vertex u is
/// short by 1/2, a path of conflicting quasi-edges from a vertex with spare
/// slack and odd conflict degree to u is oriented towards u first.
/// The result is verified; anything that fails verification is rejected.
inline Extension extend_to_full_coloring(const Graph& g, const CapacityMap& c, const QuasiGraph& q,
                                         const Assignment& psi) {
  require_matching(g, c);
  const int n = q.order();
  if (static_cast<int>(psi.size()) != n) throw std::invalid_argument("assignment size differs from quasi-graph order");
  for (std::uint8_t col : psi)
    if (col != 1 && col != 2) throw std::invalid_argument("assignment is not total");

  Extension ext;
  const int m = static_cast<int>(q.quasi_edges.size());
  ext.orientation.assign(m, {-1, -1});
  const std::vector<int> slack = doubled_slack(q, c, psi);

  std::vector<int> deficient;
  for (int v = 0; v < n; ++v)
    if (slack[v] < 0) deficient.push_back(v);
  if (deficient.size() > 1) {
    ext.failure = "more than one vertex exceeds its capacity";
    return ext;
  }
  if (deficient.size() == 1 && slack[deficient[0]] != -1) {
    ext.failure = "deficient vertex is short by more than 1/2";
    return ext;
  }
  ext.extension_case = deficient.empty() ? 2 : 1;

  // Conflict multigraph G' with adjacency sorted by (neighbour, edge id).
  std::vector<std::vector<std::pair<int, int>>> adj(n + 1);
  std::vector<bool> conflicting(m, false);
  for (int k = 0; k < m; ++k) {
    const auto& e = q.quasi_edges[k];
    if (psi[e.a] == psi[e.b]) continue;
    conflicting[k] = true;
    adj[e.a].push_back({e.b, k});
    adj[e.b].push_back({e.a, k});
  }
  std::vector<int> degree(n + 1, 0);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());

  std::vector<bool> removed(m, false);
  if (ext.extension_case == 1) {
    const int u = deficient[0];
    for (auto& list : adj) std::sort(list.begin(), list.end());
    std::vector<int> parent_edge(n, -1), dist(n, -1);
    std::vector<int> frontier{u};
    dist[u] = 0;
    int target = -1;
    while (!frontier.empty() && target < 0) {
      std::vector<int> next;
      for (int x : frontier)
        for (auto [y, k] : adj[x])
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            parent_edge[y] = k;
            next.push_back(y);
          }
      std::sort(next.begin(), next.end());
      for (int y : next)
        if (degree[y] % 2 == 1 && slack[y] >= 1) {
          target = y;
          break;
        }
      frontier = std::move(next);
    }
    if (target < 0) {
      ext.failure = "no odd-degree vertex with spare slack reachable from the deficient vertex";
      return ext;
    }
    for (int x = target; x != u;) {
      const int k = parent_edge[x];
      const auto& e = q.quasi_edges[k];
      const int toward = e.a == x ? e.b : e.a;
      ext.orientation[k] = {x, toward};
      ext.path.push_back(k);
      removed[k] = true;
      --degree[x];
      --degree[toward];
      x = toward;
    }
  }

  // G'' plus an apex joined to its odd vertices; every degree is now even,
  // so greedy closed walks partition the edges into cycles.
  const int apex = n;
  struct Arc {
    int to;
    int id;  // quasi-edge id, or -1 - j for the j-th apex edge
  };
  std::vector<std::vector<Arc>> walk_adj(n + 1);
  for (int k = 0; k < m; ++k)
    if (conflicting[k] && !removed[k]) {
      const auto& e = q.quasi_edges[k];
      walk_adj[e.a].push_back({e.b, k});
      walk_adj[e.b].push_back({e.a, k});
    }
  int apex_edges = 0;
  for (int v = 0; v < n; ++v)
    if (degree[v] % 2 == 1) {
      walk_adj[v].push_back({apex, -1 - apex_edges});
      walk_adj[apex].push_back({v, -1 - apex_edges});
      ++apex_edges;
    }
  for (auto& list : walk_adj)
    std::sort(list.begin(), list.end(), [](const Arc& x, const Arc& y) {
      return x.to != y.to ? x.to < y.to : x.id < y.id;
    });
  std::vector<bool> used_quasi(m, false), used_apex(apex_edges, false);
  std::vector<std::size_t> cursor(n + 1, 0);
  auto used = [&](int id) -> std::vector<bool>::reference {
    return id >= 0 ? used_quasi[id] : used_apex[-1 - id];
  };
  for (int start = 0; start <= n; ++start) {
    for (;;) {
      int cur = start;
      bool moved = false;
      for (;;) {
        auto& cs = cursor[cur];
        while (cs < walk_adj[cur].size() && used(walk_adj[cur][cs].id)) ++cs;
        if (cs == walk_adj[cur].size()) break;
        const Arc arc = walk_adj[cur][cs];
        used(arc.id) = true;
        moved = true;
        if (arc.id >= 0)
          ext.orientation[arc.id] = {cur, arc.to};
        else
          ext.apex_arcs.emplace_back(cur, arc.to);
        cur = arc.to;
      }
      if (!moved) break;
    }
  }

  Coloring full(g.order(), 0);
  for (int v = 0; v < n; ++v) full[q.vertices[v]] = psi[v];
  for (int k = 0; k < m; ++k) {
    const auto& e = q.quasi_edges[k];
    if (!conflicting[k]) {
      full[e.top] = static_cast<std::uint8_t>(3 - psi[e.a]);
    } else {
      const int head = ext.orientation[k].second;
      full[e.top] = static_cast<std::uint8_t>(3 - psi[head]);
    }
  }
  if (!verify_coloring(g, c, full)) {
    ext.failure = "lifted colouring violates a capacity";
    return ext;
  }
  ext.coloring = std::move(full);
  return ext;
}

struct PipelineTrace {
  bool quasi_graph_built = false;
  std::string quasi_graph_error;
  std::string mode;  // "exact" or "local-search"
  int quasi_order = 0;
  std::optional<Score> score;
  int extension_case = 0;
  std::string failure;
  bool fallback = false;
};

struct ProofSolveResult {
  std::optional<Coloring> coloring;
  PipelineTrace trace;
};

inline constexpr int kPipelineExactLimit = 20;

/// Quasi-graph -> score maximiser -> extension, falling back to the exact
/// solver whenever a stage is inapplicable or the lift fails.
inline ProofSolveResult proof_guided_solve(const Graph& g, const CapacityMap& c, LocalSearchOptions opts = {}) {
  require_matching(g, c);
  ProofSolveResult res;
  auto fall_back = [&] {
    res.trace.fallback = true;
    res.coloring = solve(g, c);
    return res;
  };

  QuasiGraph q;
  try {
    q = build_quasi_graph(g, c);
  } catch (const QuasiGraphError& e) {
    res.trace.quasi_graph_error = e.what();
    return fall_back();
  }
  res.trace.quasi_graph_built = true;
  res.trace.quasi_order = q.order();

  const MaximizeMode mode = q.order() <= kPipelineExactLimit ? MaximizeMode::Exact : MaximizeMode::LocalSearch;
  res.trace.mode = mode == MaximizeMode::Exact ? "exact" : "local-search";
  const Assignment psi = maximize_score(q, c, mode, opts);
  res.trace.score = score(q, c, psi);

  Extension ext = extend_to_full_coloring(g, c, q, psi);
  res.trace.extension_case = ext.extension_case;
  res.trace.failure = ext.failure;
  if (!ext.coloring) return fall_back();
  res.coloring = std::move(ext.coloring);
  return res;
}

}  // namespace defcol
