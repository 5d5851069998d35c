#pragma once

#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "akx/errors.hpp"
#include "akx/generating.hpp"
#include "akx/set_family.hpp"
#include "akx/shifting.hpp"

namespace akx {

// Symmetric extent l (the family is invariant under all relabelings of [l]),
// the boundary X of sets blocking extent l+1, and its slices X_a by
// intersection size with [l]. Slice members live outside [l+1].
struct SymmetryData {
  int sym_extent = 1;
  SetFamily boundary;
  std::vector<SetFamily> slices;
};

inline SymmetryData symmetry_data(const SetFamily& f) {
  if (!is_left_compressed(f)) throw PreconditionError("family must be left-compressed");
  SymmetryData sd;
  sd.sym_extent = 1;
  while (sd.sym_extent < f.n) {
    const int u = sd.sym_extent, v = sd.sym_extent + 1;
    if (shift_ij(f, u, v) != f || shift_ij(f, v, u) != f) break;
    ++sd.sym_extent;
  }
  const int l = sd.sym_extent;
  sd.boundary = SetFamily(f.n);
  sd.slices.assign(l + 1, SetFamily(f.n));
  if (l == f.n) return sd;
  const std::uint32_t lp1 = 1u << l;  // bit of point l+1
  const std::uint32_t lpre = prefix_mask(l);
  for (auto m : f.members()) {
    if (m & lp1) continue;
    const std::uint32_t inside = m & lpre;
    if (inside == 0) continue;
    // All choices of i in A cap [l] agree (the family is symmetric on [l]);
    // test one.
    const std::uint32_t i = inside & (~inside + 1);
    if (!f.contains((m ^ i) | lp1)) {
      sd.boundary.add(m);
      sd.slices[popcount32(inside)].add(m & ~lpre);
    }
  }
  return sd;
}

// { T u extra u R : T a size-a subset of pool, R in slice }.
inline SetFamily assemble_block(int n, std::uint32_t pool, int a, std::uint32_t extra,
                                const SetFamily& slice) {
  SetFamily out(n);
  if (a < 0) return out;
  std::vector<int> pos;
  for (int i = 0; i < n; ++i)
    if ((pool >> i) & 1u) pos.push_back(i);
  if (a > static_cast<int>(pos.size())) return out;
  auto rs = slice.members();
  for (auto comb : k_subsets(static_cast<int>(pos.size()), a)) {
    std::uint32_t tmask = 0;
    for (std::size_t k = 0; k < pos.size(); ++k)
      if ((comb >> k) & 1u) tmask |= 1u << pos[k];
    for (auto r : rs) out.add(tmask | extra | r);
  }
  return out;
}

// Measure of the a-th boundary block, the m_a of the push-pull identities.
inline Rat boundary_block_mass(const SetFamily& f, const SymmetryData& sd, int a, const Rat& p) {
  if (a < 0 || a >= static_cast<int>(sd.slices.size())) return Rat(0);
  return measure(assemble_block(f.n, prefix_mask(sd.sym_extent), a, 0, sd.slices[a]), p);
}

// Push-pull surgery for unequal slice sizes a + b = l + t: each side trades
// its rival's block for its own block pushed onto point l+1.
inline std::pair<SetFamily, SetFamily> sym2_transform(const SetFamily& f, int t, int a, int b) {
  if (t < 1) throw PreconditionError("t must be at least 1");
  if (!is_left_compressed(f)) throw PreconditionError("family must be left-compressed");
  if (!is_t_intersecting(f, t)) throw PreconditionError("family must be t-intersecting");
  SymmetryData sd = symmetry_data(f);
  const int l = sd.sym_extent;
  if (l >= f.n) throw PreconditionError("symmetric extent must be below n");
  if (a == b) throw PreconditionError("a and b must differ");
  if (a + b != l + t) throw PreconditionError("a + b must equal symmetric extent + t");
  auto slice_of = [&](int x) -> const SetFamily& {
    static const SetFamily none;
    if (x < 0 || x > l) return none;
    return sd.slices[x];
  };
  if (slice_of(a).empty() && slice_of(b).empty())
    throw PreconditionError("boundary slices a and b are both empty");

  const std::uint32_t lp1 = 1u << l;
  auto build = [&](int keep, int drop) {
    SetFamily out = f;
    if (drop >= 0 && drop <= l)
      for (auto m : assemble_block(f.n, prefix_mask(l), drop, 0, sd.slices[drop]).members())
        out.remove(m);
    if (keep >= 1 && keep <= l + 1 && !slice_of(keep).empty())
      for (auto m : assemble_block(f.n, prefix_mask(l), keep - 1, lp1, sd.slices[keep]).members())
        out.add(m);
    return out;
  };
  return {build(a, b), build(b, a)};
}

// Push-pull surgery for the middle slice a = (l+t)/2, spreading it over
// [l+1] but keeping only the part through a spare coordinate s_idx. When
// s_idx is not supplied the smallest admissible one is used.
inline SetFamily sym3_transform(const SetFamily& f, int t,
                                std::optional<int> s_idx = std::nullopt) {
  if (t < 1) throw PreconditionError("t must be at least 1");
  if (is_trivial(f)) throw PreconditionError("family must be non-trivial");
  if (!is_monotone(f)) throw PreconditionError("family must be monotone");
  if (!is_left_compressed(f)) throw PreconditionError("family must be left-compressed");
  if (!is_t_intersecting(f, t)) throw PreconditionError("family must be t-intersecting");
  GeneratingData gd = generating_data(f);
  SymmetryData sd = symmetry_data(f);
  const int l = sd.sym_extent, m = gd.extent;
  int s = 0;
  if (s_idx) {
    s = *s_idx;
    if (s < 1 || s > f.n || s <= m || s == l + 1)
      throw PreconditionError("s_idx must lie in (extent, n] and differ from sym extent + 1");
  } else {
    for (int c = m + 1; c <= f.n; ++c)
      if (c != l + 1) { s = c; break; }
    if (s == 0) throw PreconditionError("no admissible s_idx");
  }
  if ((l + t) % 2 != 0) throw PreconditionError("symmetric extent + t must be even");
  const int a = (l + t) / 2;
  if (a < 0 || a > l || sd.slices[a].empty())
    throw PreconditionError("middle boundary slice is empty");

  const std::uint32_t sbit = 1u << (s - 1);
  SetFamily xprime(f.n);
  for (auto r : sd.slices[a].members())
    if (r & sbit) xprime.add(r);
  SetFamily out = f;
  for (auto mk : assemble_block(f.n, prefix_mask(l), a, 0, sd.slices[a]).members())
    out.remove(mk);
  for (auto mk : assemble_block(f.n, prefix_mask(l + 1), a, 0, xprime).members())
    out.add(mk);
  return out;
}

// Joint fixpoint of up-closure and left-compression. Preserves
// t-intersection; never lowers any mu_p with p fixed, since up-closure only
// adds sets and compression is measure-preserving.
inline SetFamily compress_and_close(SetFamily f) {
  while (true) {
    SetFamily next = left_compress(up_set(f)).family;
    if (next == f) return f;
    f = std::move(next);
  }
}

namespace detail {

inline bool sym3plus_ok(const SetFamily& f, int t) {
  return t >= 1 && !is_trivial(f) && is_monotone(f) && is_left_compressed(f) &&
         is_t_intersecting(f, t);
}

// All one-step surgery children of a normalized family.
inline std::vector<SetFamily> surgery_children(const SetFamily& f, int t, const Rat& p) {
  std::vector<SetFamily> out;
  SymmetryData sd = symmetry_data(f);
  const int l = sd.sym_extent;
  for (int a = 1; a <= l; ++a) {
    const int b = l + t - a;
    if (b < a) break;
    if (a == b) continue;
    try {
      auto [f1, f2] = sym2_transform(f, t, a, b);
      out.push_back(std::move(f1));
      out.push_back(std::move(f2));
    } catch (const PreconditionError&) {}
  }
  try {
    out.push_back(sym3_transform(f, t));
  } catch (const PreconditionError&) {}
  try {
    GeneratingData gd = generating_data(f);
    for (int a = 0; a <= f.n; ++a) {
      const int b = gd.extent + t - a;
      if (b < a) break;
      if (a == b) continue;
      try {
        auto [f1, f2] = gs2_transform(f, t, a, b);
        out.push_back(std::move(f1));
        out.push_back(std::move(f2));
      } catch (const PreconditionError&) {}
    }
    if ((gd.extent + t) % 2 == 0)
      for (int i = 1; i <= gd.extent - 1; ++i)
        try {
          out.push_back(gs3_transform(f, t, i));
        } catch (const PreconditionError&) {}
  } catch (const PreconditionError&) {}
  (void)p;
  return out;
}

}  // namespace detail

// Composite strict-improvement step: push-pull where it applies directly, and
// when the extent fills all of [n], extend by a free point, push-pull through
// it, then collapse the extent back with two-sided surgeries and drop the
// extra point. Returns a t-intersecting family on f.n points of strictly
// larger measure, or nothing when the preconditions fail.
inline std::optional<SetFamily> sym3plus_improve(const SetFamily& f, int t, const Rat& p) {
  if (!detail::sym3plus_ok(f, t)) return std::nullopt;
  GeneratingData gd = generating_data(f);
  SymmetryData sd = symmetry_data(f);
  const int l = sd.sym_extent, m = gd.extent;
  if (!(l < m || m < f.n)) return std::nullopt;
  if ((f.n + t) % 2 != 0) return std::nullopt;
  const Rat lo = make_rat(l - t + 2, 2 * (l + 1));
  if (!(p > lo && p <= Rat(1, 2))) return std::nullopt;

  const Rat base = measure(f, p);
  std::vector<SetFamily> cands = detail::surgery_children(f, t, p);

  if (m == f.n) {
    // Extend by a point the family ignores, push-pull through it, collapse.
    try {
      SetFamily g = sym3_transform(extend_one_point(f), t, f.n + 1);
      for (int guard = 0; guard < 64; ++guard) {
        g = compress_and_close(g);
        if (is_trivial(g)) break;
        GeneratingData gg = generating_data(g);
        if (gg.extent <= f.n) {
          cands.push_back(restrict_last_point(g));
          break;
        }
        int a = -1;
        for (int c = 0; c <= g.n; ++c)
          if (!gg.by_size[c].empty()) { a = c; break; }
        if (a < 0) break;
        auto [h1, h2] = gs2_transform(g, t, a, gg.extent + t - a);
        g = (measure(h1, p) >= measure(h2, p)) ? h1 : h2;
      }
    } catch (const PreconditionError&) {}
  }

  const SetFamily* best = nullptr;
  Rat best_val = base;
  for (const auto& c : cands) {
    Rat v = measure(c, p);
    if (v > best_val) { best_val = v; best = &c; }
  }
  if (best) return *best;

  // Tie plateau (possible at p = 1/2): walk equal-measure children looking
  // for a strict step.
  std::optional<SetFamily> hit;
  std::set<boost::dynamic_bitset<>> seen;
  std::deque<SetFamily> queue;
  auto push = [&](const SetFamily& g) {
    if (hit) return;
    SetFamily h = compress_and_close(g);
    const Rat v = measure(h, p);
    if (v > base) { hit = std::move(h); return; }
    if (v < base) return;
    if (seen.insert(h.ind).second) queue.push_back(std::move(h));
  };
  push(f);
  for (const auto& c : cands) push(c);
  while (!hit && !queue.empty() && seen.size() < 256) {
    SetFamily cur = std::move(queue.front());
    queue.pop_front();
    if (!detail::sym3plus_ok(cur, t)) continue;
    for (const auto& c : detail::surgery_children(cur, t, p)) {
      if (hit) break;
      if (measure(c, p) > base) return c;
      push(c);
    }
  }
  return hit;
}

}  // namespace akx
