#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "akx/rational.hpp"

namespace akx {

// Vertex set over at most 128 vertices.
struct V128 {
  std::uint64_t lo = 0, hi = 0;

  static V128 universe(int nv) {
    V128 u;
    if (nv >= 64) {
      u.lo = ~0ull;
      u.hi = (nv == 128) ? ~0ull : ((1ull << (nv - 64)) - 1);
    } else {
      u.lo = (nv == 64) ? ~0ull : ((1ull << nv) - 1);
    }
    return u;
  }
  bool test(int v) const { return ((v < 64 ? lo >> v : hi >> (v - 64)) & 1ull) != 0; }
  void set(int v) { (v < 64 ? lo : hi) |= 1ull << (v & 63); }
  void reset(int v) { (v < 64 ? lo : hi) &= ~(1ull << (v & 63)); }
  bool any() const { return (lo | hi) != 0; }
  int count() const { return std::popcount(lo) + std::popcount(hi); }
  int first() const { return lo ? std::countr_zero(lo) : 64 + std::countr_zero(hi); }
  friend V128 operator&(V128 a, V128 b) { return {a.lo & b.lo, a.hi & b.hi}; }
  friend V128 operator|(V128 a, V128 b) { return {a.lo | b.lo, a.hi | b.hi}; }
  friend V128 operator-(V128 a, V128 b) { return {a.lo & ~b.lo, a.hi & ~b.hi}; }
  friend bool operator==(const V128& a, const V128& b) { return a.lo == b.lo && a.hi == b.hi; }
  friend bool operator<(const V128& a, const V128& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (V128 s = *this; s.any();) {
      int v = s.first();
      out.push_back(v);
      s.reset(v);
    }
    return out;
  }
};

struct CliqueInstance {
  int num_vertices = 0;
  std::vector<Rat> weight;  // strictly positive
  std::vector<V128> adj;    // irreflexive, symmetric

  void init(int nv) {
    if (nv < 0 || nv > 128) throw std::invalid_argument("clique instance supports up to 128 vertices");
    num_vertices = nv;
    weight.assign(nv, Rat(0));
    adj.assign(nv, V128{});
  }
  void add_edge(int u, int v) {
    adj[u].set(v);
    adj[v].set(u);
  }
};

struct CliqueOptions {
  bool count = false;
  bool enumerate = false;
  std::size_t enumerate_cap = 1u << 20;
};

struct CliqueResult {
  Rat value;  // empty clique counts, so the value is at least 0
  V128 witness;
  std::optional<Int> count;
  std::optional<std::vector<V128>> optima;
};

namespace detail {

class CliqueSolver {
 public:
  CliqueSolver(const CliqueInstance& inst, const CliqueOptions& opt) : g_(inst), opt_(opt) {}

  CliqueResult run() {
    best_ = Rat(0);
    witness_ = V128{};
    count_ = 1;  // the empty clique
    optima_.clear();
    if (opt_.enumerate) optima_.push_back(V128{});
    V128 all = V128::universe(g_.num_vertices);
    expand(V128{}, Rat(0), all);
    CliqueResult r;
    r.value = best_;
    r.witness = witness_;
    if (opt_.count) r.count = count_;
    if (opt_.enumerate) {
      std::sort(optima_.begin(), optima_.end());
      r.optima = std::move(optima_);
    }
    return r;
  }

 private:
  void record(const V128& clique, const Rat& w) {
    if (w > best_) {
      best_ = w;
      witness_ = clique;
      count_ = 1;
      if (opt_.enumerate) optima_.assign(1, clique);
    } else if (w == best_) {
      count_ += 1;
      if (opt_.enumerate) {
        if (optima_.size() >= opt_.enumerate_cap)
          throw std::runtime_error("optimal clique enumeration cap exceeded");
        optima_.push_back(clique);
      }
    }
  }

  Rat weight_sum(const V128& s) const {
    Rat w(0);
    for (V128 p = s; p.any();) {
      int v = p.first();
      p.reset(v);
      w += g_.weight[v];
    }
    return w;
  }

  // Partition s into classes independent in the graph; a clique takes at most
  // one vertex per class, so the class maxima bound any clique inside s.
  Rat cover_bound(const V128& s) const {
    Rat bound(0);
    std::vector<V128> cls;
    std::vector<Rat> cls_max;
    for (V128 p = s; p.any();) {
      int v = p.first();
      p.reset(v);
      bool placed = false;
      for (std::size_t c = 0; c < cls.size(); ++c) {
        if ((cls[c] & g_.adj[v]).any()) continue;
        cls[c].set(v);
        if (g_.weight[v] > cls_max[c]) cls_max[c] = g_.weight[v];
        placed = true;
        break;
      }
      if (!placed) {
        V128 nc;
        nc.set(v);
        cls.push_back(nc);
        cls_max.push_back(g_.weight[v]);
      }
    }
    for (const auto& w : cls_max) bound += w;
    return bound;
  }

  bool is_clique(const V128& s) const {
    for (V128 p = s; p.any();) {
      int v = p.first();
      p.reset(v);
      V128 rest = s;
      rest.reset(v);
      if (!((rest - g_.adj[v]) == V128{})) return false;
    }
    return true;
  }

  void expand(V128 r, Rat wr, V128 p) {
    while (p.any()) {
      const bool exact = opt_.count || opt_.enumerate;
      Rat total = weight_sum(p);
      if (exact) {
        const Rat reach = wr + total;
        if (reach < best_) return;
        if (reach == best_) {
          if (is_clique(p)) record(r | p, reach);
          return;
        }
      } else {
        if (wr + total <= best_) return;
      }
      Rat cb = cover_bound(p);
      if (exact ? (wr + cb < best_) : (wr + cb <= best_)) return;

      int v = p.first();
      p.reset(v);
      V128 rv = r;
      rv.set(v);
      Rat wv = wr + g_.weight[v];
      record(rv, wv);
      expand(rv, wv, p & g_.adj[v]);
    }
  }

  const CliqueInstance& g_;
  CliqueOptions opt_;
  Rat best_;
  V128 witness_;
  Int count_;
  std::vector<V128> optima_;
};

}  // namespace detail

inline CliqueResult max_weight_clique(const CliqueInstance& inst, CliqueOptions opt = {}) {
  for (int v = 0; v < inst.num_vertices; ++v)
    if (!(inst.weight[v] > Rat(0)))
      throw std::invalid_argument("clique solver requires strictly positive weights");
  return detail::CliqueSolver(inst, opt).run();
}

}  // namespace akx
