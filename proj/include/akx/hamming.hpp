#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "akx/clique.hpp"
#include "akx/errors.hpp"
#include "akx/family_io.hpp"
#include "akx/rational.hpp"
#include "akx/set_family.hpp"
#include "akx/stable_set.hpp"

namespace akx {

// Subset of Z_m^n x {0,1}^ell. Point index: circular digits first (x_1 most
// significant, base m), then binary digits (b_1 most significant).
struct HammingFamily {
  int m = 2, n = 0, ell = 0;
  boost::dynamic_bitset<> ind;

  HammingFamily() : ind(1) {}
  HammingFamily(int m_, int n_, int ell_) : m(m_), n(n_), ell(ell_) {
    if (m < 1 || m > 31) throw std::invalid_argument("modulus out of range");
    if (n < 0 || ell < 0) throw std::invalid_argument("negative coordinate count");
    std::size_t pts = 1;
    for (int i = 0; i < n; ++i) {
      pts *= static_cast<std::size_t>(m);
      if (pts > (1u << 22)) throw std::invalid_argument("point space too large");
    }
    pts <<= ell;
    if (ell > 22 || pts > (1u << 22)) throw std::invalid_argument("point space too large");
    ind.resize(pts);
  }

  std::size_t points() const { return ind.size(); }
  bool contains(std::size_t idx) const { return ind.test(idx); }
  void add(std::size_t idx) { ind.set(idx); }
  void remove(std::size_t idx) { ind.reset(idx); }
  std::size_t size() const { return ind.count(); }
  bool empty() const { return !ind.any(); }

  std::size_t index_of(const std::vector<int>& x, const std::vector<int>& b) const {
    if (static_cast<int>(x.size()) != n || static_cast<int>(b.size()) != ell)
      throw std::invalid_argument("coordinate count mismatch");
    std::size_t circ = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] < 0 || x[i] >= m) throw std::invalid_argument("circular digit out of range");
      circ = circ * m + static_cast<std::size_t>(x[i]);
    }
    std::size_t bin = 0;
    for (int j = 0; j < ell; ++j) {
      if (b[j] != 0 && b[j] != 1) throw std::invalid_argument("binary digit out of range");
      bin = (bin << 1) | static_cast<std::size_t>(b[j]);
    }
    return (circ << ell) | bin;
  }

  std::pair<std::vector<int>, std::vector<int>> point_of(std::size_t idx) const {
    std::vector<int> x(n), b(ell);
    std::size_t bin = idx & ((std::size_t(1) << ell) - 1);
    std::size_t circ = idx >> ell;
    for (int j = ell - 1; j >= 0; --j) {
      b[j] = static_cast<int>(bin & 1);
      bin >>= 1;
    }
    for (int i = n - 1; i >= 0; --i) {
      x[i] = static_cast<int>(circ % m);
      circ /= m;
    }
    return {x, b};
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (auto i = ind.find_first(); i != boost::dynamic_bitset<>::npos; i = ind.find_next(i))
      out.push_back(i);
    return out;
  }

  friend bool operator==(const HammingFamily& a, const HammingFamily& b) {
    return a.m == b.m && a.n == b.n && a.ell == b.ell && a.ind == b.ind;
  }
  friend bool operator!=(const HammingFamily& a, const HammingFamily& b) { return !(a == b); }
};

namespace detail {

inline void check_hamming_s(int m, int s) {
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (2 * s > m) throw std::invalid_argument("s must be at most m/2");
}

// Circular digits s-agree when they differ by at most s-1 around the circle.
inline bool circ_agree(int d, int m, int s) { return d < s || d > m - s; }

}  // namespace detail

// Product mass: uniform on each circular coordinate, s/m per lit binary one.
inline Rat hybrid_measure(const HammingFamily& f, int s) {
  detail::check_hamming_s(f.m, s);
  const Rat circ_mass = rat_pow(make_rat(1, f.m), static_cast<unsigned>(f.n));
  std::vector<Rat> bin_mass(f.ell + 1);
  for (int k = 0; k <= f.ell; ++k)
    bin_mass[k] = rat_pow(make_rat(s, f.m), static_cast<unsigned>(k)) *
                  rat_pow(make_rat(f.m - s, f.m), static_cast<unsigned>(f.ell - k));
  const std::size_t bmask = (std::size_t(1) << f.ell) - 1;
  Rat total(0);
  for (auto idx : f.members())
    total += circ_mass * bin_mass[popcount32(static_cast<std::uint32_t>(idx & bmask))];
  return total;
}

// Number of coordinates where two points s-agree: circular within the window,
// binary when both are 1.
inline int s_agreement_count(const HammingFamily& f, std::size_t i, std::size_t j, int s) {
  const std::size_t bmask = (std::size_t(1) << f.ell) - 1;
  int cnt = popcount32(static_cast<std::uint32_t>(i & j & bmask));
  std::size_t ci = i >> f.ell, cj = j >> f.ell;
  for (int k = 0; k < f.n; ++k) {
    int d = static_cast<int>((ci % f.m + f.m - cj % f.m) % f.m);
    if (detail::circ_agree(d, f.m, s)) ++cnt;
    ci /= f.m;
    cj /= f.m;
  }
  return cnt;
}

// Every pair of members, the diagonal included, s-agrees on >= t coordinates.
inline bool is_t_agreeing_upto_s(const HammingFamily& f, int t, int s) {
  detail::check_hamming_s(f.m, s);
  auto mem = f.members();
  for (std::size_t a = 0; a < mem.size(); ++a)
    for (std::size_t b = a; b < mem.size(); ++b)
      if (s_agreement_count(f, mem[a], mem[b], s) < t) return false;
  return true;
}

namespace detail {
inline std::uint32_t sigma_mask(const HammingFamily& f, std::size_t idx, const std::vector<int>& y,
                                int s) {
  std::size_t circ = idx >> f.ell;
  std::uint32_t sigma = 0;
  for (int i = f.n - 1; i >= 0; --i) {
    int d = static_cast<int>((circ % f.m + f.m - y[i]) % f.m);
    if (d >= 1 && d <= s) sigma |= 1u << i;
    circ /= f.m;
  }
  std::size_t bin = idx & ((std::size_t(1) << f.ell) - 1);
  for (int j = 0; j < f.ell; ++j)
    if ((bin >> (f.ell - 1 - j)) & 1u) sigma |= 1u << (f.n + j);
  return sigma;
}
}  // namespace detail

// F = sigma_y^{-1}(G): a point joins when its circular coordinates landing in
// the window {1..s} above y, together with its lit binary coordinates, form a
// member of G.
inline HammingFamily sigma_pullback(const SetFamily& g, const std::vector<int>& y, int m, int s) {
  detail::check_hamming_s(m, s);
  const int n = static_cast<int>(y.size());
  const int ell = g.n - n;
  if (ell < 0) throw std::invalid_argument("ground set smaller than circular coordinate count");
  for (int v : y)
    if (v < 0 || v >= m) throw std::invalid_argument("base point digit out of range");
  HammingFamily f(m, n, ell);
  for (std::size_t idx = 0; idx < f.points(); ++idx)
    if (g.contains(detail::sigma_mask(f, idx, y, s))) f.add(idx);
  return f;
}

// Image sigma_y(F), a set family on n + ell points.
inline SetFamily sigma_image(const HammingFamily& f, const std::vector<int>& y, int s) {
  detail::check_hamming_s(f.m, s);
  if (static_cast<int>(y.size()) != f.n) throw std::invalid_argument("base point length mismatch");
  SetFamily g(f.n + f.ell);
  for (auto idx : f.members()) g.add(detail::sigma_mask(f, idx, y, s));
  return g;
}

// Search all base points for a set family whose pullback reproduces F.
inline std::optional<std::pair<std::vector<int>, SetFamily>> is_equivalent_to_set_family(
    const HammingFamily& f, int s) {
  detail::check_hamming_s(f.m, s);
  std::size_t total = 1;
  for (int i = 0; i < f.n; ++i) {
    total *= static_cast<std::size_t>(f.m);
    if (total > 4096) throw std::invalid_argument("base point search space too large");
  }
  std::vector<int> y(f.n, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = f.n - 1; i >= 0; --i) {
      y[i] = static_cast<int>(c % f.m);
      c /= f.m;
    }
    SetFamily g = sigma_image(f, y, s);
    if (sigma_pullback(g, y, f.m, s) == f) return std::make_pair(y, g);
  }
  return std::nullopt;
}

struct ReduceResult {
  HammingFamily family;
  StableSetInstance instance;
};

// One elimination step: the last circular coordinate is traded for a fresh
// leading binary coordinate. Fibers hang off contexts; contexts that fail to
// s-agree on t-1 coordinates never coexist, contexts agreeing on exactly t-1
// force their fibers to be cross-agreeing on the circle, so fiber sizes obey
// the vertex-packing constraints with v_x = |F_x|/(2s). A half-integral
// maximizer then decides which contexts keep the new coordinate free ({0,1}),
// lit ({1}), or dropped. Measure never decreases.
inline ReduceResult reduce_coordinate(const HammingFamily& f, int t, int s) {
  detail::check_hamming_s(f.m, s);
  if (f.n < 1) throw PreconditionError("no circular coordinate to reduce");
  if (t < 1) throw PreconditionError("t must be at least 1");
  if (!is_t_agreeing_upto_s(f, t, s)) throw PreconditionError("family must be t-agreeing up to s");

  const int m = f.m, n = f.n, ell = f.ell;
  const std::size_t binsz = std::size_t(1) << ell;
  const std::size_t nctx = f.points() / static_cast<std::size_t>(m);

  std::vector<std::uint32_t> fiber(nctx, 0);
  for (auto idx : f.members()) {
    std::size_t bin = idx & (binsz - 1);
    std::size_t circ = idx >> ell;
    fiber[(circ / m) * binsz + bin] |= 1u << (circ % m);
  }
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < nctx; ++c)
    if (fiber[c]) live.push_back(c);

  HammingFamily ctx_space(m, n - 1, ell);  // for context agreement counts
  HammingFamily out(m, n - 1, ell + 1);
  auto out_index = [&](std::size_t ctx, int alpha) {
    std::size_t bin = ctx & (binsz - 1), prefix = ctx >> ell;
    return (prefix << (ell + 1)) | (static_cast<std::size_t>(alpha) << ell) | bin;
  };
  auto ctx_mass = [&](std::size_t ctx) {
    return rat_pow(make_rat(1, m), static_cast<unsigned>(n - 1)) *
           rat_pow(make_rat(s, m), static_cast<unsigned>(popcount32(
                                       static_cast<std::uint32_t>(ctx & (binsz - 1))))) *
           rat_pow(make_rat(m - s, m),
                   static_cast<unsigned>(ell - popcount32(static_cast<std::uint32_t>(ctx & (binsz - 1)))));
  };

  StableSetInstance inst;
  if (live.empty()) return {out, inst};

  // The degenerate case: contexts cannot carry t agreements on their own, so
  // every surviving fiber is replaced by the lit new coordinate.
  if (n + ell == t) {
    for (std::size_t i = 0; i < live.size(); ++i) {
      inst.vertices.push_back(static_cast<long long>(live[i]));
      inst.weight.push_back(ctx_mass(live[i]));
      inst.solution.push_back(make_rat(1, 2));
      for (std::size_t j = i; j < live.size(); ++j)
        if (s_agreement_count(ctx_space, live[i], live[j], s) == t - 1)
          inst.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      out.add(out_index(live[i], 1));
    }
    return {out, inst};
  }

  // Tight pairs constrain the fibers; everything else is free.
  std::vector<std::vector<int>> adj(live.size());
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = i; j < live.size(); ++j) {
      int agree = s_agreement_count(ctx_space, live[i], live[j], s);
      if (agree < t - 1) throw std::logic_error("coexisting contexts below t-1 agreements");
      if (agree == t - 1) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        adj[i].push_back(static_cast<int>(j));
        if (i != j) adj[j].push_back(static_cast<int>(i));
      }
    }

  std::vector<char> in_graph(live.size(), 0);
  for (std::size_t i = 0; i < live.size(); ++i) in_graph[i] = !adj[i].empty();

  std::vector<int> pos(live.size(), -1);
  for (std::size_t i = 0; i < live.size(); ++i)
    if (in_graph[i]) {
      pos[i] = static_cast<int>(inst.vertices.size());
      inst.vertices.push_back(static_cast<long long>(live[i]));
      inst.weight.push_back(ctx_mass(live[i]));
    }
  for (auto [i, j] : edges) inst.edges.emplace_back(pos[i], pos[j]);

  if (!inst.vertices.empty()) {
    if (s == 1 && m == 2) {
      // Forced half weights: every constrained fiber is a single point.
      inst.solution.assign(inst.vertices.size(), make_rat(1, 2));
    } else {
      inst.solution = half_integral_max(inst);
      // The fibers themselves are feasible; never settle for less.
      std::vector<Rat> v(inst.vertices.size());
      for (std::size_t i = 0; i < live.size(); ++i)
        if (pos[i] >= 0) v[pos[i]] = make_rat(popcount32(fiber[i]), 2 * s);
      if (!stable_set_feasible(inst, v)) throw std::logic_error("fiber solution infeasible");
      if (stable_set_objective(inst, inst.solution) < stable_set_objective(inst, v))
        throw std::logic_error("half-integral maximizer below fiber solution");
    }
  }

  for (std::size_t i = 0; i < live.size(); ++i) {
    if (!in_graph[i]) {
      out.add(out_index(live[i], 0));
      out.add(out_index(live[i], 1));
      continue;
    }
    const Rat& w = inst.solution[pos[i]];
    if (w == Rat(1)) {
      out.add(out_index(live[i], 0));
      out.add(out_index(live[i], 1));
    } else if (w == make_rat(1, 2)) {
      out.add(out_index(live[i], 1));
    }
  }
  return {out, inst};
}

// Eliminate every circular coordinate, then read the binary cube as subsets.
inline SetFamily reduce_full(const HammingFamily& f, int t, int s) {
  if (f.n + f.ell > kMaxPoints) throw std::invalid_argument("too many coordinates");
  HammingFamily cur = f;
  for (int step = 0; step < f.n; ++step) cur = reduce_coordinate(cur, t, s).family;
  const int lt = cur.ell;
  SetFamily g(lt);
  for (auto idx : cur.members()) {
    std::uint32_t mask = 0;
    for (int j = 0; j < lt; ++j)
      if ((idx >> (lt - 1 - j)) & 1u) mask |= 1u << j;
    g.add(mask);
  }
  return g;
}

struct HammingOracleOptions {
  bool with_count = false;
  bool with_families = false;
  std::size_t family_cap = 1u << 20;
};

struct HammingOracleResult {
  long long size = 0;
  HammingFamily witness;
  std::optional<Int> count;
  std::optional<std::vector<HammingFamily>> optima;
};

// Ground truth for the largest t-agreeing-up-to-s family on Z_m^n.
inline HammingOracleResult hamming_oracle(int m, int n, int t, int s,
                                          HammingOracleOptions opt = {}) {
  detail::check_hamming_s(m, s);
  if (n < 1 || t < 1) throw std::invalid_argument("need n, t >= 1");
  HammingFamily space(m, n, 0);
  if (space.points() > 128) throw std::invalid_argument("hamming oracle supports at most 128 points");

  HammingOracleResult r;
  r.witness = HammingFamily(m, n, 0);
  if (t > n) {  // no point agrees with itself on t coordinates
    if (opt.with_count) r.count = 1;
    if (opt.with_families) r.optima = std::vector<HammingFamily>{r.witness};
    return r;
  }

  const int pts = static_cast<int>(space.points());
  CliqueInstance g;
  g.init(pts);
  for (int i = 0; i < pts; ++i) {
    g.weight[i] = Rat(1);
    for (int j = i + 1; j < pts; ++j)
      if (s_agreement_count(space, static_cast<std::size_t>(i), static_cast<std::size_t>(j), s) >= t)
        g.add_edge(i, j);
  }
  CliqueOptions copt;
  copt.count = opt.with_count;
  copt.enumerate = opt.with_families;
  copt.enumerate_cap = opt.family_cap;
  CliqueResult cr = max_weight_clique(g, copt);

  auto to_family = [&](const V128& clique) {
    HammingFamily h(m, n, 0);
    for (int v : clique.elements()) h.add(static_cast<std::size_t>(v));
    return h;
  };
  r.size = numerator(cr.value).convert_to<long long>();
  r.witness = to_family(cr.witness);
  if (cr.count) r.count = *cr.count;
  if (cr.optima) {
    std::vector<HammingFamily> fams;
    fams.reserve(cr.optima->size());
    for (const auto& c : *cr.optima) fams.push_back(to_family(c));
    r.optima = std::move(fams);
  }
  return r;
}

// Text format "HAMFAM 1": header then one member per line as space-separated
// digits, circular coordinates before binary ones.
inline HammingFamily read_hamfam(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      std::size_t at = line.find_first_not_of(' ');
      if (at == std::string::npos) continue;
      out = line.substr(at);
      return true;
    }
    return false;
  };
  std::string cur;
  if (!next_line(cur) || cur != "HAMFAM 1") throw ParseError(lineno, "expected HAMFAM 1 header");
  auto read_field = [&](const std::string& key) {
    std::string l;
    if (!next_line(l) || l.rfind(key, 0) != 0) throw ParseError(lineno, "expected " + key + "<int>");
    try {
      std::size_t used = 0;
      int v = std::stoi(l.substr(key.size()), &used);
      if (used != l.size() - key.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ParseError(lineno, "bad value for " + key);
    }
  };
  int m = read_field("m=");
  int n = read_field("n=");
  int ell = read_field("l=");
  HammingFamily f(m, n, ell);
  while (next_line(cur)) {
    std::istringstream ss(cur);
    std::vector<int> x, b;
    int v;
    while (ss >> v) {
      if (static_cast<int>(x.size()) < n)
        x.push_back(v);
      else
        b.push_back(v);
    }
    if (!ss.eof()) throw ParseError(lineno, "bad digit");
    if (static_cast<int>(x.size()) != n || static_cast<int>(b.size()) != ell)
      throw ParseError(lineno, "wrong digit count");
    std::size_t idx;
    try {
      idx = f.index_of(x, b);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    if (f.contains(idx)) throw ParseError(lineno, "duplicate member");
    f.add(idx);
  }
  return f;
}

inline HammingFamily read_hamfam_string(const std::string& text) {
  std::istringstream ss(text);
  return read_hamfam(ss);
}

inline void write_hamfam(std::ostream& os, const HammingFamily& f) {
  if (f.n + f.ell == 0 && !f.empty())
    throw std::invalid_argument("member with no digits has no text form");
  os << "HAMFAM 1\n"
     << "m=" << f.m << "\n"
     << "n=" << f.n << "\n"
     << "l=" << f.ell << "\n";
  for (auto idx : f.members()) {
    auto [x, b] = f.point_of(idx);
    bool first = true;
    for (int v : x) {
      os << (first ? "" : " ") << v;
      first = false;
    }
    for (int v : b) {
      os << (first ? "" : " ") << v;
      first = false;
    }
    os << "\n";
  }
}

inline std::string write_hamfam_string(const HammingFamily& f) {
  std::ostringstream ss;
  write_hamfam(ss, f);
  return ss.str();
}

}  // namespace akx
