#pragma once

#include <boost/dynamic_bitset.hpp>
#include <algorithm>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "akx/rational.hpp"
#include "akx/subset.hpp"

namespace akx {

// A family of subsets of [n], stored as an indicator bit-vector over all 2^n
// subset bitmasks. n <= 24 keeps the indicator at most 2 MiB.
struct SetFamily {
  int n = 0;
  boost::dynamic_bitset<> ind;

  SetFamily() : ind(1) {}
  explicit SetFamily(int n_) : n(n_), ind(std::size_t(1) << check(n_)) {}

  static int check(int n) {
    if (n < 0 || n > kMaxPoints) throw std::invalid_argument("SetFamily: n out of range");
    return n;
  }

  std::size_t universe() const { return std::size_t(1) << n; }
  bool contains(std::uint32_t mask) const { return ind.test(mask); }
  void add(std::uint32_t mask) { ind.set(mask); }
  void remove(std::uint32_t mask) { ind.reset(mask); }
  std::size_t size() const { return ind.count(); }
  bool empty() const { return ind.none(); }

  bool operator==(const SetFamily& o) const { return n == o.n && ind == o.ind; }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    for (auto pos = ind.find_first(); pos != boost::dynamic_bitset<>::npos;
         pos = ind.find_next(pos))
      out.push_back(static_cast<std::uint32_t>(pos));
    return out;
  }
};

inline SetFamily family_from_masks(int n, const std::vector<std::uint32_t>& masks) {
  SetFamily f(n);
  for (auto m : masks) {
    if (n < 32 && (m >> n) != 0)
      throw std::invalid_argument("family_from_masks: member out of range");
    f.add(m);
  }
  return f;
}

// Convenience for tests and examples: family_of(3, {{1,2},{3}}).
inline SetFamily family_of(int n, std::initializer_list<std::initializer_list<int>> sets) {
  SetFamily f(n);
  for (const auto& s : sets) {
    std::uint32_t m = 0;
    for (int i : s) {
      if (i < 1 || i > n) throw std::invalid_argument("family_of: element out of range");
      m |= 1u << (i - 1);
    }
    f.add(m);
  }
  return f;
}

// Counts of members at each size 0..n.
inline std::vector<long long> level_counts(const SetFamily& f) {
  std::vector<long long> levels(f.n + 1, 0);
  for (auto pos = f.ind.find_first(); pos != boost::dynamic_bitset<>::npos;
       pos = f.ind.find_next(pos))
    ++levels[std::popcount(static_cast<std::uint32_t>(pos))];
  return levels;
}

// Product measure: a subset of size k weighs p^k (1-p)^(n-k).
inline Rat measure(const SetFamily& f, const Rat& p) {
  std::vector<Rat> term(f.n + 1);
  for (int k = 0; k <= f.n; ++k)
    term[k] = rat_pow(p, k) * rat_pow(Rat(1) - p, f.n - k);
  Rat out(0);
  for (auto pos = f.ind.find_first(); pos != boost::dynamic_bitset<>::npos;
       pos = f.ind.find_next(pos))
    out += term[std::popcount(static_cast<std::uint32_t>(pos))];
  return out;
}

// A family is t-intersecting when every two members (same member twice
// included) share at least t points; members smaller than t are ruled out by
// the diagonal case.
inline bool is_t_intersecting(const SetFamily& f, int t) {
  auto mem = f.members();
  for (auto m : mem)
    if (popcount32(m) < t) return false;
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i + 1; j < mem.size(); ++j)
      if (popcount32(mem[i] & mem[j]) < t) return false;
  return true;
}

inline bool is_cross_t_intersecting(const SetFamily& f, const SetFamily& g, int t) {
  if (f.n != g.n) throw std::invalid_argument("cross intersecting: mismatched n");
  auto a = f.members(), b = g.members();
  for (auto x : a)
    for (auto y : b)
      if (popcount32(x & y) < t) return false;
  return true;
}

namespace detail {

// Bit pattern over the 2^n index space selecting indices whose bit i is clear.
inline boost::dynamic_bitset<> low_bit_pattern(int n, int i) {
  using Block = boost::dynamic_bitset<>::block_type;
  static_assert(sizeof(Block) * 8 == 64);
  const std::size_t nbits = std::size_t(1) << n;
  const std::size_t nblocks = (nbits + 63) / 64;
  static const Block word[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
      0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
  std::vector<Block> blocks(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    if (i < 6)
      blocks[b] = word[i];
    else
      blocks[b] = ((b >> (i - 6)) & 1u) ? Block(0) : ~Block(0);
  }
  boost::dynamic_bitset<> out(blocks.begin(), blocks.end());
  out.resize(nbits);
  return out;
}

}  // namespace detail

// Up-closure: adds every superset of every member. Word-parallel over the
// indicator: one pass per coordinate.
inline SetFamily up_set(const SetFamily& f) {
  SetFamily out = f;
  for (int i = 0; i < f.n; ++i) {
    auto low = out.ind & detail::low_bit_pattern(f.n, i);
    low <<= (std::size_t(1) << i);
    out.ind |= low;
  }
  return out;
}

inline bool is_monotone(const SetFamily& f) { return up_set(f) == f; }

struct FranklParams {
  int t = 1;
  int r = 0;
};

// frankl(n,t,r): all A with |A intersect [t+2r]| >= t+r.
inline SetFamily frankl(int n, int t, int r) {
  if (t < 1 || r < 0 || t + 2 * r > n)
    throw std::invalid_argument("frankl: need t >= 1, r >= 0, t+2r <= n");
  SetFamily f(n);
  const std::uint32_t window = prefix_mask(t + 2 * r);
  for (std::size_t mask = 0; mask < f.universe(); ++mask)
    if (popcount32(static_cast<std::uint32_t>(mask) & window) >= t + r)
      f.add(static_cast<std::uint32_t>(mask));
  return f;
}

// Searches for a window S of size t+2r with F = {A : |A cap S| >= t+r}.
inline std::optional<Subset> frankl_equivalence_witness(const SetFamily& f, int t, int r) {
  if (t < 1 || r < 0 || t + 2 * r > f.n) return std::nullopt;
  const int need = t + r;
  for (std::uint32_t s : k_subsets(f.n, t + 2 * r)) {
    bool ok = true;
    for (std::size_t mask = 0; mask < f.universe() && ok; ++mask)
      if (f.contains(static_cast<std::uint32_t>(mask)) !=
          (popcount32(static_cast<std::uint32_t>(mask) & s) >= need))
        ok = false;
    if (ok) return Subset(f.n, s);
  }
  return std::nullopt;
}

// Relabels points: perm[i-1] is the new name of point i.
inline SetFamily permute_points(const SetFamily& f, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != f.n)
    throw std::invalid_argument("permute_points: wrong length");
  SetFamily out(f.n);
  for (auto pos = f.ind.find_first(); pos != boost::dynamic_bitset<>::npos;
       pos = f.ind.find_next(pos)) {
    std::uint32_t mask = static_cast<std::uint32_t>(pos), img = 0;
    for (int i = 1; i <= f.n; ++i)
      if ((mask >> (i - 1)) & 1u) img |= 1u << (perm[i - 1] - 1);
    out.add(img);
  }
  return out;
}

inline bool depends_on_point(const SetFamily& f, int i) {
  const std::uint32_t bit = 1u << (i - 1);
  for (std::size_t mask = 0; mask < f.universe(); ++mask)
    if (f.contains(static_cast<std::uint32_t>(mask)) !=
        f.contains(static_cast<std::uint32_t>(mask) ^ bit))
      return true;
  return false;
}

// F on n points becomes F u (F x {n+1}) on n+1 points: the new point is free.
inline SetFamily extend_one_point(const SetFamily& f) {
  SetFamily out(f.n + 1);
  const std::size_t half = f.universe();
  for (auto pos = f.ind.find_first(); pos != boost::dynamic_bitset<>::npos;
       pos = f.ind.find_next(pos)) {
    out.ind.set(pos);
    out.ind.set(pos + half);
  }
  return out;
}

// Drops the last point; meaningful when the family does not depend on it.
inline SetFamily restrict_last_point(const SetFamily& f) {
  if (f.n == 0) throw std::invalid_argument("restrict_last_point: n == 0");
  SetFamily out(f.n - 1);
  for (std::size_t mask = 0; mask < out.universe(); ++mask)
    if (f.contains(static_cast<std::uint32_t>(mask)))
      out.add(static_cast<std::uint32_t>(mask));
  return out;
}

}  // namespace akx
