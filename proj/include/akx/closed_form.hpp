#pragma once

#include <string>
#include <vector>

#include "akx/rational.hpp"
#include "akx/set_family.hpp"

namespace akx {

// Measure of a Frankl family does not depend on n: it is a binomial tail on
// its window alone.
inline Rat mu_frankl(int t, int r, const Rat& p) {
  if (t < 1 || r < 0) throw std::invalid_argument("mu_frankl: need t >= 1, r >= 0");
  const int w = t + 2 * r;
  Rat out(0);
  for (int k = t + r; k <= w; ++k)
    out += Rat(binom(w, k)) * rat_pow(p, k) * rat_pow(Rat(1) - p, w - k);
  return out;
}

// Sign of mu_frankl(t,r,p) - mu_frankl(t,r+1,p): +1, 0, -1.
inline int compare_frankl(int t, int r, const Rat& p) {
  const Rat d = mu_frankl(t, r, p) - mu_frankl(t, r + 1, p);
  if (d > 0) return 1;
  if (d < 0) return -1;
  return 0;
}

struct Breakpoint {
  int t = 1;
  int r = 0;
  Rat value;
};

// p at which the (t,r) and (t,r+1) Frankl measures cross.
inline Breakpoint breakpoint(int t, int r) {
  if (t < 1 || r < 0) throw std::invalid_argument("breakpoint: need t >= 1, r >= 0");
  return Breakpoint{t, r, make_rat(r + 1, t + 2 * r + 1)};
}

enum class Regime {
  FranklUnique,
  FranklTwo,
  T1PSmall,
  T1PLargeOdd,
  T1PLargeEven,
  T1PHalfMany,
  PHalf,
};

inline std::string regime_str(Regime r) {
  switch (r) {
    case Regime::FranklUnique: return "frankl-unique";
    case Regime::FranklTwo: return "frankl-two";
    case Regime::T1PSmall: return "t1-psmall";
    case Regime::T1PLargeOdd: return "t1-plarge-odd";
    case Regime::T1PLargeEven: return "t1-plarge-even";
    case Regime::T1PHalfMany: return "t1-phalf-many";
    case Regime::PHalf: return "phalf";
  }
  return "?";
}

struct WResult {
  Rat value;
  std::vector<int> optimal_r;  // ascending
  Regime regime = Regime::FranklUnique;
};

// Largest-possible-measure of a t-intersecting family on n points, with the
// optimal Frankl parameters and a tag for the uniqueness structure.
inline WResult w_closed(int n, int t, const Rat& p) {
  if (n < 1 || t < 1 || t > n) throw std::invalid_argument("w_closed: need 1 <= t <= n");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("w_closed: need 0 < p < 1");
  const int rstar = (n - t) / 2;
  const Rat half(1, 2);

  if (t == 1) {
    WResult res;
    if (p < half) {
      res.value = p;
      res.optimal_r = {0};
      res.regime = Regime::T1PSmall;
    } else if (p == half) {
      res.value = half;
      for (int r = 0; r <= rstar; ++r) res.optimal_r.push_back(r);
      res.regime = Regime::T1PHalfMany;
    } else {
      res.value = mu_frankl(1, rstar, p);
      res.optimal_r = {rstar};
      res.regime = (n % 2 == 1) ? Regime::T1PLargeOdd : Regime::T1PLargeEven;
    }
    return res;
  }

  // t >= 2: windows [r/(t+2r-1), (r+1)/(t+2r+1)] tile (0,1/2); beyond the
  // last breakpoint the largest admissible r wins.
  int sel = rstar;
  bool at_break = false;
  for (int r = 0; r <= rstar; ++r) {
    const Rat b = breakpoint(t, r).value;
    if (p < b) { sel = r; break; }
    if (p == b) { sel = r; at_break = true; break; }
  }
  WResult res;
  res.value = mu_frankl(t, sel, p);
  if (at_break && sel + 1 <= rstar) {
    res.optimal_r = {sel, sel + 1};
    res.regime = Regime::FranklTwo;
  } else {
    res.optimal_r = {sel};
    res.regime = (p == half) ? Regime::PHalf : Regime::FranklUnique;
  }
  return res;
}

// Limit over n of w_closed(n,t,p).
inline Rat wsup_closed(int t, const Rat& p) {
  if (t < 1) throw std::invalid_argument("wsup_closed: need t >= 1");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("wsup_closed: need 0 < p < 1");
  const Rat half(1, 2);
  if (t == 1) return p <= half ? p : Rat(1);
  if (p > half) return Rat(1);
  if (p == half) return half;
  int r = 0;
  while (p > breakpoint(t, r).value) ++r;
  return mu_frankl(t, r, p);
}

// Breakpoints with both crossing families on <= n points, ascending in r.
inline std::vector<Breakpoint> breakpoints_upto(int n, int t) {
  std::vector<Breakpoint> out;
  for (int r = 0; t + 2 * r + 2 <= n; ++r) out.push_back(breakpoint(t, r));
  return out;
}

}  // namespace akx
