#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "akx/rational.hpp"
#include "akx/subset.hpp"

namespace akx {

// Subset of Z_m as a residue bitmask.
struct ZmSet {
  int m = 1;
  std::uint32_t bits = 0;

  ZmSet() = default;
  ZmSet(int m_, std::uint32_t bits_) : m(m_), bits(bits_) {
    if (m < 1 || m > 31) throw std::invalid_argument("modulus out of range");
    if (bits >> m) throw std::invalid_argument("residue out of range");
  }
  int size() const { return popcount32(bits); }
  bool contains(int x) const { return (bits >> x) & 1u; }
  friend bool operator==(const ZmSet& a, const ZmSet& b) { return a.m == b.m && a.bits == b.bits; }
};

inline std::uint32_t zm_full(int m) { return (1u << m) - 1; }

inline std::uint32_t zm_rotate(std::uint32_t bits, int k, int m) {
  k %= m;
  if (k < 0) k += m;
  if (k == 0) return bits;
  return ((bits << k) | (bits >> (m - k))) & zm_full(m);
}

// Residues within distance s-1 of 0 on the circle.
inline std::uint32_t zm_window(int m, int s) {
  std::uint32_t w = 1;  // offset 0
  for (int d = 1; d <= s - 1; ++d) {
    w |= zm_rotate(1, d, m);
    w |= zm_rotate(1, -d, m);
  }
  return w;
}

namespace detail {
inline void check_circle_args(int m, int s) {
  if (m < 1 || m > 31) throw std::invalid_argument("modulus out of range");
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (2 * s > m) throw std::invalid_argument("s must be at most m/2");
}
}  // namespace detail

// Every a in A and b in B differ by some residue in {-(s-1),...,s-1}.
inline bool is_cross_s_agreeing(const ZmSet& a, const ZmSet& b, int s) {
  if (a.m != b.m) throw std::invalid_argument("moduli differ");
  detail::check_circle_args(a.m, s);
  const std::uint32_t w = zm_window(a.m, s);
  for (int x = 0; x < a.m; ++x)
    if (a.contains(x) && (b.bits & ~zm_rotate(w, x, a.m))) return false;
  return true;
}

inline bool is_s_agreeing(const ZmSet& a, int s) { return is_cross_s_agreeing(a, a, s); }

// Center of a circular interval, a residue or half-residue in [0, m).
inline std::optional<Rat> interval_center(const ZmSet& a) {
  const int m = a.m;
  if (a.bits == 0 || a.bits == zm_full(m)) return std::nullopt;
  int boundaries = 0, start = -1;
  for (int x = 0; x < m; ++x) {
    bool in = a.contains(x), prev = a.contains((x + m - 1) % m);
    if (in && !prev) {
      ++boundaries;
      start = x;
    }
  }
  if (boundaries != 1) return std::nullopt;
  Rat c = Rat(start) + Rat(a.size() - 1) / 2;
  Int num = numerator(c), den = denominator(c);
  num %= Int(m) * den;
  if (num < 0) num += Int(m) * den;
  return make_rat(num, den);
}

inline bool is_interval(const ZmSet& a) { return interval_center(a).has_value(); }

struct KatonaPair {
  std::uint32_t a_bits, b_bits;
  int a_size, b_size;
  std::optional<Rat> center;  // common center for s < m/2 pairs
};

struct KatonaReport {
  int m = 0, s = 0;
  bool ok = false;
  std::vector<KatonaPair> equality_pairs;
  std::vector<std::string> failures;
};

// Exhaustive check of the cross-agreeing bound |A| + |B| <= 2s together with
// the equality characterization: common-center intervals below the halfway
// window, the shifted-complement rule at s = m/2.
inline KatonaReport verify_katona_cross(int m, int s) {
  detail::check_circle_args(m, s);
  if (m > 14) throw std::invalid_argument("verify_katona_cross supports m <= 14");
  KatonaReport rep;
  rep.m = m;
  rep.s = s;
  rep.ok = true;
  const std::uint32_t w = zm_window(m, s);
  std::vector<std::uint32_t> rot(m);
  for (int x = 0; x < m; ++x) rot[x] = zm_rotate(w, x, m);

  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };

  for (std::uint32_t a = 1; a <= zm_full(m); ++a) {
    // Largest B cross-agreeing with A.
    std::uint32_t c = zm_full(m);
    for (std::uint32_t rest = a; rest;) {
      int x = std::countr_zero(rest);
      rest &= rest - 1;
      c &= rot[x];
    }
    if (c == 0) continue;  // no nonempty partner exists
    const int asz = popcount32(a), csz = popcount32(c);
    if (asz + csz > 2 * s) {
      fail("bound violated at A mask " + std::to_string(a));
      continue;
    }
    if (asz + csz != 2 * s) continue;
    if (c < a) continue;  // each unordered pair reported once
    KatonaPair pr{a, c, asz, csz, std::nullopt};
    if (2 * s < m) {
      auto ca = interval_center(ZmSet(m, a)), cb = interval_center(ZmSet(m, c));
      if (!ca || !cb || *ca != *cb) {
        fail("equality pair not common-center intervals at A mask " + std::to_string(a));
        continue;
      }
      pr.center = *ca;
    } else {
      const std::uint32_t expect = zm_full(m) & ~zm_rotate(a, s, m);
      if (c != expect) {
        fail("equality pair does not match shifted complement at A mask " + std::to_string(a));
        continue;
      }
    }
    rep.equality_pairs.push_back(pr);
  }

  // Equality must really hold for the reported pairs (cross-agreement is by
  // construction: B = C(A)).
  return rep;
}

inline std::string katona_report_lines(const KatonaReport& rep) {
  std::ostringstream os;
  for (const auto& pr : rep.equality_pairs) {
    os << pr.a_size << ' ' << pr.b_size << ' ' << pr.a_bits << ' ' << pr.b_bits << ' '
       << (pr.center ? rat_str(*pr.center) : std::string("-")) << '\n';
  }
  return os.str();
}

}  // namespace akx
