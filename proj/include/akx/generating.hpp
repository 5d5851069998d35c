#pragma once

#include <vector>

#include "akx/errors.hpp"
#include "akx/set_family.hpp"
#include "akx/shifting.hpp"

namespace akx {

// Generating family (minimal members), extent (largest point used by a
// generator), and the boundary generators (those containing the extent),
// sliced by size.
struct GeneratingData {
  SetFamily generators;
  int extent = 0;
  SetFamily boundary;
  std::vector<SetFamily> by_size;  // by_size[a]: boundary generators of size a
};

inline bool is_trivial(const SetFamily& f) {
  return f.empty() || f.size() == f.universe();
}

inline GeneratingData generating_data(const SetFamily& f) {
  if (is_trivial(f)) throw PreconditionError("family must be non-trivial");
  if (!is_monotone(f)) throw PreconditionError("family must be monotone");
  GeneratingData gd;
  gd.generators = SetFamily(f.n);
  for (auto m : f.members()) {
    bool minimal = true;
    for (int i = 0; i < f.n && minimal; ++i)
      if ((m >> i) & 1u)
        if (f.contains(m ^ (1u << i))) minimal = false;
    if (minimal) gd.generators.add(m);
  }
  gd.extent = 0;
  for (auto m : gd.generators.members())
    for (int i = f.n; i >= 1; --i)
      if ((m >> (i - 1)) & 1u) {
        if (i > gd.extent) gd.extent = i;
        break;
      }
  gd.boundary = SetFamily(f.n);
  gd.by_size.assign(f.n + 1, SetFamily(f.n));
  if (gd.extent >= 1) {
    const std::uint32_t bit = 1u << (gd.extent - 1);
    for (auto m : gd.generators.members())
      if (m & bit) {
        gd.boundary.add(m);
        gd.by_size[popcount32(m)].add(m);
      }
  }
  return gd;
}

namespace detail {

inline void check_surgery_input(const SetFamily& f, int t) {
  if (t < 1) throw PreconditionError("t must be at least 1");
  if (is_trivial(f)) throw PreconditionError("family must be non-trivial");
  if (!is_monotone(f)) throw PreconditionError("family must be monotone");
  if (!is_left_compressed(f)) throw PreconditionError("family must be left-compressed");
  if (!is_t_intersecting(f, t)) throw PreconditionError("family must be t-intersecting");
}

}  // namespace detail

// Drops the extent point from every member of a slice.
inline SetFamily strip_extent(const SetFamily& slice, int extent) {
  SetFamily out(slice.n);
  const std::uint32_t bit = 1u << (extent - 1);
  for (auto m : slice.members()) out.add(m & ~bit);
  return out;
}

// Two-sided boundary surgery for a != b, a + b = extent + t. Returns the two
// rival families; both are t-intersecting, and for p <= 1/2 the better one is
// at least as good as the input.
inline std::pair<SetFamily, SetFamily> gs2_transform(const SetFamily& f, int t, int a, int b) {
  detail::check_surgery_input(f, t);
  GeneratingData gd = generating_data(f);
  if (a == b) throw PreconditionError("a and b must differ");
  if (a + b != gd.extent + t) throw PreconditionError("a + b must equal extent + t");
  auto in_range = [&](int x) { return x >= 0 && x <= f.n; };
  const bool a_empty = !in_range(a) || gd.by_size[a].empty();
  const bool b_empty = !in_range(b) || gd.by_size[b].empty();
  if (a_empty && b_empty) throw PreconditionError("boundary slices a and b are both empty");

  auto build = [&](int drop1, int drop2, int strip) {
    SetFamily gens = gd.generators;
    if (in_range(drop1))
      for (auto m : gd.by_size[drop1].members()) gens.remove(m);
    if (in_range(drop2))
      for (auto m : gd.by_size[drop2].members()) gens.remove(m);
    if (in_range(strip)) {
      const std::uint32_t bit = 1u << (gd.extent - 1);
      for (auto m : gd.by_size[strip].members()) gens.add(m & ~bit);
    }
    return up_set(gens);
  };
  return {build(a, b, b), build(a, b, a)};
}

// One-sided surgery for the middle slice a = (extent+t)/2; i selects which
// boundary generators are dropped outright.
inline SetFamily gs3_transform(const SetFamily& f, int t, int i) {
  detail::check_surgery_input(f, t);
  GeneratingData gd = generating_data(f);
  if (gd.extent <= 1) throw PreconditionError("extent must exceed 1");
  if ((gd.extent + t) % 2 != 0) throw PreconditionError("extent + t must be even");
  const int a = (gd.extent + t) / 2;
  if (a < 0 || a > f.n || gd.by_size[a].empty())
    throw PreconditionError("middle boundary slice is empty");
  if (i < 1 || i > gd.extent - 1) throw PreconditionError("i must lie in [extent-1]");

  const std::uint32_t ibit = 1u << (i - 1);
  const std::uint32_t mbit = 1u << (gd.extent - 1);
  SetFamily gens = gd.generators;
  for (auto m : gd.by_size[a].members()) {
    gens.remove(m);
    if (!(m & ibit)) gens.add(m & ~mbit);
  }
  return up_set(gens);
}

}  // namespace akx
