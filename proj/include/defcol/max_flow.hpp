#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace defcol {

/// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max() / 4;

  explicit MaxFlow(int nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

  int add_edge(int from, int to, std::int64_t cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  std::int64_t run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::int64_t f = dfs(s, t, kInfinite)) flow += f;
    }
    return flow;
  }

  /// Nodes reachable from s in the residual graph after run(): the source
  /// side of the minimum cut with the fewest nodes.
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int id : adj_[v]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      const int id = adj_[v][i];
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t f = dfs(a.to, t, std::min(pushed, a.cap))) {
        a.cap -= f;
        arcs_[id ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace defcol
