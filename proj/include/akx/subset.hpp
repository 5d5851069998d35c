#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace akx {

// Ground sets are [n] = {1,...,n} with n <= 24; a subset is the bitmask with
// bit i-1 standing for point i.
constexpr int kMaxPoints = 24;

inline int popcount32(std::uint32_t m) { return std::popcount(m); }

struct Subset {
  int n = 0;
  std::uint32_t bits = 0;

  Subset() = default;
  Subset(int n_, std::uint32_t bits_) : n(n_), bits(bits_) {
    if (n < 0 || n > kMaxPoints) throw std::invalid_argument("Subset: bad n");
    if (n < 32 && (bits >> n) != 0)
      throw std::invalid_argument("Subset: element out of range");
  }

  int size() const { return popcount32(bits); }
  bool contains(int i) const { return i >= 1 && i <= n && (bits >> (i - 1)) & 1u; }
  bool operator==(const Subset&) const = default;

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
};

inline std::uint32_t full_mask(int n) {
  return n >= 32 ? ~0u : ((1u << n) - 1u);
}

// [t+2r] style prefix window {1,...,k}.
inline std::uint32_t prefix_mask(int k) { return full_mask(k); }

inline std::string mask_str(std::uint32_t bits, int n) {
  if (bits == 0) return "{}";
  std::string out;
  for (int i = 1; i <= n; ++i)
    if ((bits >> (i - 1)) & 1u) {
      if (!out.empty()) out += ",";
      out += std::to_string(i);
    }
  return out;
}

// Next k-subset bitmask in increasing numeric order (Gosper's hack).
inline std::uint32_t next_same_popcount(std::uint32_t v) {
  std::uint32_t c = v & -v, r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

// All k-subsets of [n] as masks, increasing.
inline std::vector<std::uint32_t> k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  if (k == 0) { out.push_back(0); return out; }
  std::uint32_t v = (1u << k) - 1u, top = full_mask(n);
  while (v <= top) {
    out.push_back(v);
    if (v == 0) break;
    std::uint32_t nx = next_same_popcount(v);
    if (nx <= v) break;
    v = nx;
  }
  return out;
}

}  // namespace akx
