#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "akx/errors.hpp"
#include "akx/family_io.hpp"
#include "akx/set_family.hpp"

namespace akx {

// shift_ij moves i to j: every member containing i but not j is replaced by
// (A \ {i}) u {j} unless that set is already present. Word-parallel over the
// indicator.
inline SetFamily shift_ij(const SetFamily& f, int i, int j) {
  if (i < 1 || i > f.n || j < 1 || j > f.n || i == j)
    throw std::invalid_argument("shift_ij: bad coordinates");
  const auto has_i = ~detail::low_bit_pattern(f.n, i - 1);
  const auto no_j = detail::low_bit_pattern(f.n, j - 1);
  auto sources = f.ind & has_i & no_j;
  const std::size_t bi = std::size_t(1) << (i - 1), bj = std::size_t(1) << (j - 1);
  auto fwd = [&](boost::dynamic_bitset<> b) {
    if (bj > bi) b <<= (bj - bi); else b >>= (bi - bj);
    return b;
  };
  auto back = [&](boost::dynamic_bitset<> b) {
    if (bj > bi) b >>= (bj - bi); else b <<= (bi - bj);
    return b;
  };
  auto landed = fwd(sources) & ~f.ind;  // targets that were free
  SetFamily out = f;
  out.ind &= ~back(landed);
  out.ind |= landed;
  return out;
}

inline bool is_left_compressed(const SetFamily& f) {
  for (int i = 2; i <= f.n; ++i)
    for (int j = 1; j < i; ++j)
      if (shift_ij(f, i, j) != f) return false;
  return true;
}

// Total element sum; each applied shift in left_compress strictly lowers it.
inline long long compression_potential(const SetFamily& f) {
  long long phi = 0;
  for (auto m : f.members())
    for (int i = 1; i <= f.n; ++i)
      if ((m >> (i - 1)) & 1u) phi += i;
  return phi;
}

struct CompressStep {
  int i = 0;  // from
  int j = 0;  // to
};

struct CompressResult {
  SetFamily family;
  std::vector<CompressStep> trace;
};

// Applies shift_ij for pairs j < i in lexicographic (j,i) order, restarting
// after every change, until a full pass leaves the family fixed.
inline CompressResult left_compress(const SetFamily& f) {
  CompressResult res{f, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 1; j <= res.family.n && !changed; ++j)
      for (int i = j + 1; i <= res.family.n && !changed; ++i) {
        SetFamily shifted = shift_ij(res.family, i, j);
        if (shifted != res.family) {
          res.family = std::move(shifted);
          res.trace.push_back({i, j});
          changed = true;
        }
      }
  }
  return res;
}

inline void write_trace(std::ostream& out, const std::vector<CompressStep>& trace) {
  for (const auto& s : trace) out << s.i << " " << s.j << "\n";
}

inline std::vector<CompressStep> read_trace(std::istream& in) {
  std::vector<CompressStep> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    CompressStep s;
    if (!(ss >> s.i >> s.j)) throw ParseError(lineno, "expected 'i j'");
    out.push_back(s);
  }
  return out;
}

// Heavy shift: members containing A and avoiding B are replaced by
// (S \ A) u B when that set is absent.
inline SetFamily shift_AB(const SetFamily& f, const Subset& a, const Subset& b) {
  if (a.n != f.n || b.n != f.n) throw std::invalid_argument("shift_AB: mismatched n");
  if ((a.bits & b.bits) != 0) throw PreconditionError("A and B must be disjoint");
  SetFamily out = f;
  for (auto m : f.members()) {
    if ((m & a.bits) != a.bits || (m & b.bits) != 0) continue;
    const std::uint32_t moved = (m & ~a.bits) | b.bits;
    if (!f.contains(moved)) {
      out.remove(m);
      out.add(moved);
    }
  }
  return out;
}

// (s,s+1)-stability: no heavy shift with |A| = s, |B| = s+1 moves anything.
inline bool is_stable(const SetFamily& f, int s) {
  if (s < 0) throw std::invalid_argument("is_stable: s < 0");
  auto mem = f.members();
  for (auto a : k_subsets(f.n, s))
    for (auto b : k_subsets(f.n, s + 1)) {
      if ((a & b) != 0) continue;
      for (auto m : mem) {
        if ((m & a) != a || (m & b) != 0) continue;
        if (!f.contains((m & ~a) | b)) return false;
      }
    }
  return true;
}

// Applies heavy shifts smallest |A| first, restarting from s = 0 after every
// change, until stable for every s. Each applied shift grows a member by one
// element, so the total size strictly increases and the loop terminates.
inline SetFamily stabilize(const SetFamily& f, int t) {
  if (!is_t_intersecting(f, t)) throw PreconditionError("input must be t-intersecting");
  SetFamily cur = f;
restart:
  for (int s = 0; 2 * s + 1 <= cur.n; ++s)
    for (auto a : k_subsets(cur.n, s))
      for (auto b : k_subsets(cur.n, s + 1)) {
        if ((a & b) != 0) continue;
        SetFamily shifted = shift_AB(cur, Subset(cur.n, a), Subset(cur.n, b));
        if (shifted != cur) {
          cur = std::move(shifted);
          goto restart;
        }
      }
  return cur;
}

}  // namespace akx
