#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace gmt::detail {

// Dinic max flow on real capacities. After max_flow(), source_side() is the
// minimal source set of a minimum cut (vertices reachable in the residual).
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n), level_(n), it_(n) {}

  void add_edge(int u, int v, double cap, double revCap = 0) {
    if (cap <= 0 && revCap <= 0) return;
    adj_[u].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({u, revCap});
  }

  double max_flow(int s, int t, double eps) {
    eps_ = eps;
    double flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        const double f = dfs(s, t, std::numeric_limits<double>::infinity());
        if (f <= eps_) break;
        flow += f;
      }
    }
    bfs(s, -1);
    return flow;
  }

  bool source_side(int v) const { return level_[v] >= 0; }

 private:
  struct Edge {
    int to;
    double cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e : adj_[u])
        if (edges_[e].cap > eps_ && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
    }
    return t >= 0 && level_[t] >= 0;
  }

  double dfs(int u, int t, double pushed) {
    if (u == t) return pushed;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      const int e = adj_[u][i];
      Edge& ed = edges_[e];
      if (ed.cap <= eps_ || level_[ed.to] != level_[u] + 1) continue;
      const double d = dfs(ed.to, t, std::min(pushed, ed.cap));
      if (d > eps_) {
        ed.cap -= d;
        edges_[e ^ 1].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> it_;
  double eps_ = 0;
};

}  // namespace gmt::detail
