#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

#include "akx/rational.hpp"

namespace akx {

// Vertex-packing LP data: maximize sum w_x v_x subject to 0 <= v <= 1 and
// v_x + v_y <= 1 on edges. Solutions are kept half-integral.
struct StableSetInstance {
  std::vector<long long> vertices;  // caller labels
  std::vector<Rat> weight;
  std::vector<std::pair<int, int>> edges;  // positions into vertices
  std::vector<Rat> solution;               // entries in {0, 1/2, 1}

  int size() const { return static_cast<int>(weight.size()); }
};

inline Rat stable_set_objective(const StableSetInstance& inst, const std::vector<Rat>& sol) {
  Rat total(0);
  for (int i = 0; i < inst.size(); ++i) total += inst.weight[i] * sol[i];
  return total;
}

inline bool stable_set_feasible(const StableSetInstance& inst, const std::vector<Rat>& sol) {
  if (static_cast<int>(sol.size()) != inst.size()) return false;
  for (const auto& v : sol)
    if (v < Rat(0) || v > Rat(1)) return false;
  for (auto [u, v] : inst.edges)
    if (sol[u] + sol[v] > Rat(1)) return false;
  return true;
}

namespace detail {

// Max flow with exact rational capacities; shortest augmenting paths keep the
// number of augmentations structural.
class RatFlow {
 public:
  explicit RatFlow(int n) : head_(n, -1) {}

  void add_edge(int u, int v, Rat cap) {
    edges_.push_back({v, head_[u], std::move(cap)});
    head_[u] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({u, head_[v], Rat(0)});
    head_[v] = static_cast<int>(edges_.size()) - 1;
  }

  Rat max_flow(int s, int t) {
    Rat total(0);
    while (true) {
      std::vector<int> pre(head_.size(), -1);  // edge used to reach node
      std::deque<int> bfs{s};
      std::vector<char> seen(head_.size(), 0);
      seen[s] = 1;
      while (!bfs.empty() && !seen[t]) {
        int u = bfs.front();
        bfs.pop_front();
        for (int e = head_[u]; e != -1; e = edges_[e].next) {
          int v = edges_[e].to;
          if (seen[v] || !(edges_[e].cap > Rat(0))) continue;
          seen[v] = 1;
          pre[v] = e;
          bfs.push_back(v);
        }
      }
      if (!seen[t]) break;
      Rat aug = edges_[pre[t]].cap;
      for (int v = t; v != s; v = edges_[pre[v] ^ 1].to)
        if (edges_[pre[v]].cap < aug) aug = edges_[pre[v]].cap;
      for (int v = t; v != s; v = edges_[pre[v] ^ 1].to) {
        edges_[pre[v]].cap -= aug;
        edges_[pre[v] ^ 1].cap += aug;
      }
      total += aug;
    }
    return total;
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> bfs{s};
    seen[s] = 1;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int e = head_[u]; e != -1; e = edges_[e].next)
        if (!seen[edges_[e].to] && edges_[e].cap > Rat(0)) {
          seen[edges_[e].to] = 1;
          bfs.push_back(edges_[e].to);
        }
    }
    return seen;
  }

 private:
  struct Edge {
    int to, next;
    Rat cap;
  };
  std::vector<int> head_;
  std::vector<Edge> edges_;
};

}  // namespace detail

// Half-integral maximizer of the vertex-packing LP, by doubling into a
// bipartite graph, solving weighted independent set there through a minimum
// cut, and averaging the two copies. The cut's source side is the unique
// inclusion-minimal one, fixing the answer deterministically.
inline std::vector<Rat> half_integral_max(const StableSetInstance& inst) {
  const int n = inst.size();
  for (const auto& w : inst.weight)
    if (!(w > Rat(0))) throw std::invalid_argument("stable set weights must be positive");
  const int src = 2 * n, snk = 2 * n + 1;
  detail::RatFlow flow(2 * n + 2);
  Rat big(1);
  for (const auto& w : inst.weight) big += w;
  for (int x = 0; x < n; ++x) {
    flow.add_edge(src, x, inst.weight[x]);
    flow.add_edge(n + x, snk, inst.weight[x]);
  }
  for (auto [u, v] : inst.edges) {
    flow.add_edge(u, n + v, big);
    flow.add_edge(v, n + u, big);
  }
  flow.max_flow(src, snk);
  auto in_s = flow.reachable(src);
  // Independent set in the double: plus copies inside S, minus copies outside.
  std::vector<Rat> sol(n);
  for (int x = 0; x < n; ++x) {
    int hits = (in_s[x] ? 1 : 0) + (in_s[n + x] ? 0 : 1);
    sol[x] = make_rat(hits, 2);
  }
  if (!stable_set_feasible(inst, sol)) throw std::logic_error("half-integral solution infeasible");
  return sol;
}

// Ground truth over all {0,1/2,1} vectors: the ones form an independent set A
// and the halves can then fill everything outside A and its neighborhood.
inline Rat stable_set_exhaustive_max(const StableSetInstance& inst) {
  const int n = inst.size();
  if (n > 20) throw std::invalid_argument("exhaustive stable set check supports at most 20 vertices");
  std::vector<std::uint32_t> nbr(n, 0);
  std::uint32_t looped = 0;  // v_x + v_x <= 1 caps these at 1/2
  for (auto [u, v] : inst.edges) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
    if (u == v) looped |= 1u << u;
  }
  const std::uint32_t full = (n == 0) ? 0 : ((n == 32) ? ~0u : ((1u << n) - 1));
  Rat best(0);
  // DFS over independent sets of ones.
  struct Frame {
    int v;
    std::uint32_t a, blocked;
  };
  std::vector<Frame> stack{{0, 0u, 0u}};
  while (!stack.empty()) {
    auto [v, a, blocked] = stack.back();
    stack.pop_back();
    if (v == n) {
      Rat obj(0);
      for (int x = 0; x < n; ++x) {
        if ((a >> x) & 1u)
          obj += inst.weight[x];
        else if (!((blocked >> x) & 1u))
          obj += inst.weight[x] / 2;
      }
      if (obj > best) best = obj;
      continue;
    }
    stack.push_back({v + 1, a, blocked});
    if (!((blocked >> v) & 1u) && !((looped >> v) & 1u))
      stack.push_back({v + 1, a | (1u << v), blocked | nbr[v]});
  }
  (void)full;
  return best;
}

}  // namespace akx
