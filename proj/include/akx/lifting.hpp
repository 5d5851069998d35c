#pragma once

#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "akx/rational.hpp"
#include "akx/set_family.hpp"

namespace akx {

// Number of k-subsets of [n] meeting [t+2r] in at least t+r points.
inline Int uniform_frankl_count(int n, int k, int t, int r) {
  if (t < 1 || r < 0) throw std::invalid_argument("need t >= 1, r >= 0");
  if (t + 2 * r > n) throw std::invalid_argument("window [t+2r] exceeds ground set");
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  Int total = 0;
  for (int j = t + r; j <= t + 2 * r; ++j) {
    if (j > k || k - j > n - t - 2 * r) continue;
    total += binom(static_cast<unsigned>(t + 2 * r), static_cast<unsigned>(j)) *
             binom(static_cast<unsigned>(n - t - 2 * r), static_cast<unsigned>(k - j));
  }
  return total;
}

// Probability that a uniformly random k-subset of [n] restricts on [m] to a
// member of H; falling powers keep everything exact.
inline Rat lifted_measure(const SetFamily& h, long long n, long long k) {
  const int m = h.n;
  if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
  if (m > n) throw std::invalid_argument("ground set exceeds n");
  auto counts = level_counts(h);
  Int num = 0;
  for (int a = 0; a <= m; ++a) {
    if (counts[a] == 0) continue;
    num += Int(counts[a]) * falling(Int(k), static_cast<unsigned>(a)) *
           falling(Int(n - k), static_cast<unsigned>(m - a));
  }
  return make_rat(num, falling(Int(n), static_cast<unsigned>(m)));
}

// Gap between the uniform lift at k = floor(p n) and the weighted measure.
inline std::vector<std::pair<long long, Rat>> convergence_probe(const SetFamily& h, const Rat& p,
                                                                const std::vector<long long>& ns) {
  if (p < Rat(0) || p > Rat(1)) throw std::invalid_argument("need 0 <= p <= 1");
  const Rat base = measure(h, p);
  std::vector<std::pair<long long, Rat>> out;
  for (long long n : ns) {
    if (n < h.n) throw std::invalid_argument("probe n below ground set size");
    Int k = (numerator(p) * n) / denominator(p);
    Rat gap = lifted_measure(h, n, k.convert_to<long long>()) - base;
    if (gap < Rat(0)) gap = -gap;
    out.emplace_back(n, gap);
  }
  return out;
}

// The level decomposition every lifting argument rests on.
inline bool level_sum_identity(const SetFamily& f, const Rat& p) {
  auto counts = level_counts(f);
  Rat total(0);
  for (int k = 0; k <= f.n; ++k)
    total += rat_pow(p, static_cast<unsigned>(k)) *
             rat_pow(Rat(1) - p, static_cast<unsigned>(f.n - k)) * Rat(counts[k]);
  return total == measure(f, p);
}

}  // namespace akx
