#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "akx/clique.hpp"
#include "akx/set_family.hpp"

namespace akx {

struct OracleOptions {
  bool with_count = false;
  bool with_families = false;
  std::size_t family_cap = 1u << 20;
};

struct OracleResult {
  Rat value;
  SetFamily witness;
  std::optional<Int> count;
  std::optional<std::vector<SetFamily>> optima;
};

// Ground-truth maximum of mu_p over t-intersecting families on [n], by
// branch-and-bound over the compatibility graph of the candidate sets.
inline OracleResult max_weight_t_intersecting(int n, int t, const Rat& p,
                                              OracleOptions opt = {}) {
  if (n < 1 || n > 7) throw std::invalid_argument("oracle supports 1 <= n <= 7");
  if (t < 1 || t > n) throw std::invalid_argument("need 1 <= t <= n");
  if (!(p > Rat(0) && p < Rat(1))) throw std::invalid_argument("need 0 < p < 1");

  std::vector<std::uint32_t> verts;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (popcount32(mask) >= t) verts.push_back(mask);

  CliqueInstance g;
  g.init(static_cast<int>(verts.size()));
  const Rat q = Rat(1) - p;
  std::vector<Rat> level(n + 1);
  for (int k = 0; k <= n; ++k) level[k] = rat_pow(p, k) * rat_pow(q, n - k);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    g.weight[i] = level[popcount32(verts[i])];
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (popcount32(verts[i] & verts[j]) >= t) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }

  CliqueOptions copt;
  copt.count = opt.with_count;
  copt.enumerate = opt.with_families;
  copt.enumerate_cap = opt.family_cap;
  CliqueResult cr = max_weight_clique(g, copt);

  auto to_family = [&](const V128& clique) {
    SetFamily f(n);
    for (int v : clique.elements()) f.add(verts[v]);
    return f;
  };
  OracleResult r;
  r.value = cr.value;
  r.witness = to_family(cr.witness);
  if (cr.count) r.count = *cr.count;
  if (cr.optima) {
    std::vector<SetFamily> fams;
    fams.reserve(cr.optima->size());
    for (const auto& c : *cr.optima) fams.push_back(to_family(c));
    std::sort(fams.begin(), fams.end(),
              [](const SetFamily& a, const SetFamily& b) { return a.ind < b.ind; });
    r.optima = std::move(fams);
  }
  return r;
}

// All optimal families, in increasing indicator order.
inline std::vector<SetFamily> enumerate_optimal(int n, int t, const Rat& p,
                                                std::size_t cap = 1u << 20) {
  OracleOptions o;
  o.with_families = true;
  o.family_cap = cap;
  return *max_weight_t_intersecting(n, t, p, o).optima;
}

struct UniformOracleResult {
  long long size = 0;
  std::vector<std::uint32_t> witness;
  std::optional<Int> count;
};

// Largest t-intersecting family of k-subsets of [n].
inline UniformOracleResult max_uniform_t_intersecting(int n, int k, int t,
                                                      bool with_count = false) {
  if (n < 1 || n > kMaxPoints) throw std::invalid_argument("n out of range");
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  if (t < 1) throw std::invalid_argument("need t >= 1");
  std::vector<std::uint32_t> verts;
  if (k >= t) verts = k_subsets(n, k);
  if (verts.size() > 128) throw std::invalid_argument("uniform oracle supports at most 128 candidate sets");

  CliqueInstance g;
  g.init(static_cast<int>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    g.weight[i] = Rat(1);
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (popcount32(verts[i] & verts[j]) >= t) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  CliqueOptions copt;
  copt.count = with_count;
  CliqueResult cr = max_weight_clique(g, copt);

  UniformOracleResult r;
  r.size = static_cast<long long>(numerator(cr.value).convert_to<long long>());
  for (int v : cr.witness.elements()) r.witness.push_back(verts[v]);
  if (cr.count) r.count = *cr.count;
  return r;
}

// Smallest indicator over all point relabelings.
inline boost::dynamic_bitset<> canonical_indicator(const SetFamily& f) {
  std::vector<int> perm(f.n);
  std::iota(perm.begin(), perm.end(), 1);
  boost::dynamic_bitset<> best = f.ind;
  do {
    boost::dynamic_bitset<> cur = permute_points(f, perm).ind;
    if (cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Group families by relabeling orbit; classes ordered by first appearance.
inline std::vector<std::vector<SetFamily>> orbit_classes(const std::vector<SetFamily>& fams) {
  std::vector<std::vector<SetFamily>> classes;
  std::vector<boost::dynamic_bitset<>> reps;
  for (const auto& f : fams) {
    auto can = canonical_indicator(f);
    bool found = false;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (reps[i] == can) {
        classes[i].push_back(f);
        found = true;
        break;
      }
    if (!found) {
      reps.push_back(can);
      classes.push_back({f});
    }
  }
  return classes;
}

}  // namespace akx
