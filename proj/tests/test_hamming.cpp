#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "akx/closed_form.hpp"
#include "akx/hamming.hpp"
#include "akx/oracle.hpp"
#include "akx/set_family.hpp"
#include "akx/shifting.hpp"
#include "akx/stable_set.hpp"

using namespace akx;

namespace {

HammingFamily random_hamming(std::mt19937& rng, int m, int n, int ell, int fill_pct) {
  HammingFamily f(m, n, ell);
  for (std::size_t idx = 0; idx < f.points(); ++idx)
    if (static_cast<int>(rng() % 100) < fill_pct) f.add(idx);
  return f;
}

// Oracle witness on the circular part, padded with random binary digits.
// Circular agreement alone reaches t, so any padding stays t-agreeing.
HammingFamily random_t_agreeing(std::mt19937& rng, int m, int n, int ell, int t, int s) {
  auto base = hamming_oracle(m, n, t, s).witness;
  HammingFamily f(m, n, ell);
  for (auto circ : base.members())
    for (int copies = 0; copies < 2; ++copies)
      f.add((circ << ell) | (rng() & ((std::size_t(1) << ell) - 1)));
  return f;
}

Rat measure_by_hand(const HammingFamily& f, int s) {
  Rat total(0);
  for (auto idx : f.members()) {
    auto [x, b] = f.point_of(idx);
    Rat w = rat_pow(make_rat(1, f.m), static_cast<unsigned>(f.n));
    for (int v : b) w *= v ? make_rat(s, f.m) : make_rat(f.m - s, f.m);
    total += w;
  }
  return total;
}

int agreement_by_hand(const HammingFamily& f, std::size_t i, std::size_t j, int s) {
  auto [xi, bi] = f.point_of(i);
  auto [xj, bj] = f.point_of(j);
  int cnt = 0;
  for (int k = 0; k < f.n; ++k) {
    int d = (xi[k] - xj[k] + f.m) % f.m;
    if (std::min(d, f.m - d) <= s - 1) ++cnt;
  }
  for (int k = 0; k < f.ell; ++k)
    if (bi[k] == 1 && bj[k] == 1) ++cnt;
  return cnt;
}

}  // namespace

TEST_CASE("hamming family indexing round trips") {
  HammingFamily f(3, 2, 2);
  CHECK(f.points() == 36);
  CHECK(f.empty());
  CHECK(f.index_of({1, 2}, {0, 1}) == 21);
  auto [x, b] = f.point_of(21);
  CHECK(x == std::vector<int>{1, 2});
  CHECK(b == std::vector<int>{0, 1});
  for (std::size_t idx = 0; idx < f.points(); ++idx) {
    auto [xx, bb] = f.point_of(idx);
    CHECK(f.index_of(xx, bb) == idx);
  }
  f.add(21);
  CHECK(f.contains(21));
  CHECK(f.size() == 1);
  CHECK(f.members() == std::vector<std::size_t>{21});
  f.remove(21);
  CHECK(f.empty());
}

TEST_CASE("hamming family constructor rejects bad shapes") {
  CHECK_THROWS_AS(HammingFamily(32, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(HammingFamily(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(HammingFamily(2, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(HammingFamily(31, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(HammingFamily(2, 0, 23), std::invalid_argument);
  HammingFamily f(3, 1, 1);
  CHECK_THROWS_AS(f.index_of({0, 0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(f.index_of({3}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(f.index_of({0}, {2}), std::invalid_argument);
}

TEST_CASE("hybrid measure matches per point weights") {
  auto f = read_hamfam_string("HAMFAM 1\nm=3\nn=1\nl=1\n0 1\n2 0\n");
  CHECK(hybrid_measure(f, 1) == make_rat(1, 3));

  HammingFamily full(3, 1, 2);
  for (std::size_t idx = 0; idx < full.points(); ++idx) full.add(idx);
  CHECK(hybrid_measure(full, 1) == Rat(1));

  std::mt19937 rng(0xA30001);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 2 + static_cast<int>(rng() % 5);
    int s = 1 + static_cast<int>(rng() % (m / 2));
    int n = static_cast<int>(rng() % 3);
    int ell = static_cast<int>(rng() % 4);
    auto g = random_hamming(rng, m, n, ell, 40);
    CHECK(hybrid_measure(g, s) == measure_by_hand(g, s));
  }

  CHECK_THROWS_AS(hybrid_measure(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_measure(f, 2), std::invalid_argument);
}

TEST_CASE("agreement counts circular windows and shared ones") {
  HammingFamily f(5, 2, 1);
  auto i = f.index_of({0, 1}, {1});
  auto j = f.index_of({4, 2}, {1});
  CHECK(s_agreement_count(f, i, j, 2) == 3);
  CHECK(s_agreement_count(f, i, j, 1) == 1);

  std::mt19937 rng(0xA30002);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng() % 5);
    int s = 1 + static_cast<int>(rng() % (m / 2));
    int n = 1 + static_cast<int>(rng() % 3);
    int ell = static_cast<int>(rng() % 3);
    HammingFamily g(m, n, ell);
    std::size_t a = rng() % g.points(), b = rng() % g.points();
    CHECK(s_agreement_count(g, a, b, s) == agreement_by_hand(g, a, b, s));
    CHECK(s_agreement_count(g, a, b, s) == s_agreement_count(g, b, a, s));
  }
}

TEST_CASE("t agreeing check includes the diagonal") {
  HammingFamily f(2, 1, 1);
  f.add(f.index_of({0}, {0}));
  CHECK(is_t_agreeing_upto_s(f, 1, 1));
  CHECK_FALSE(is_t_agreeing_upto_s(f, 2, 1));

  HammingFamily g(2, 1, 0);
  g.add(0);
  g.add(1);
  CHECK_FALSE(is_t_agreeing_upto_s(g, 1, 1));
  CHECK(is_t_agreeing_upto_s(HammingFamily(2, 1, 0), 3, 1));
}

TEST_CASE("hamfam text round trips") {
  const std::string sample = "HAMFAM 1\nm=3\nn=1\nl=1\n0 1\n2 0\n";
  auto f = read_hamfam_string(sample);
  CHECK(f.size() == 2);
  CHECK(f.contains(f.index_of({0}, {1})));
  CHECK(f.contains(f.index_of({2}, {0})));
  CHECK(write_hamfam_string(f) == sample);

  auto g = read_hamfam_string("HAMFAM 1\n  m=3\nn=1\n\nl=1\n 0 1 \n");
  CHECK(g.size() == 1);

  std::mt19937 rng(0xA30003);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 2 + static_cast<int>(rng() % 6);
    int n = static_cast<int>(rng() % 3);
    int ell = static_cast<int>(rng() % 3);
    if (n + ell == 0) ell = 1;
    auto h = random_hamming(rng, m, n, ell, 30);
    CHECK(read_hamfam_string(write_hamfam_string(h)) == h);
  }

  HammingFamily point(3, 0, 0);
  point.add(0);
  CHECK_THROWS_AS(write_hamfam_string(point), std::invalid_argument);
  point.remove(0);
  CHECK(read_hamfam_string(write_hamfam_string(point)) == point);
}

TEST_CASE("hamfam parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      read_hamfam_string(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("HAMFAM 2\nm=3\nn=1\nl=1\n") == 1);
  CHECK(line_of("HAMFAM 1\nn=3\n") == 2);
  CHECK(line_of("HAMFAM 1\nm=3\nn=one\nl=1\n") == 3);
  CHECK(line_of("HAMFAM 1\nm=3\nn=1\nl=1\n0 1 1\n") == 5);
  CHECK(line_of("HAMFAM 1\nm=3\nn=1\nl=1\n3 0\n") == 5);
  CHECK(line_of("HAMFAM 1\nm=3\nn=1\nl=1\n0 1\n0 1\n") == 6);
  CHECK(line_of("HAMFAM 1\nm=3\nn=1\nl=1\n0 1\n") == -1);
  CHECK_THROWS_AS(read_hamfam_string(""), ParseError);
}

TEST_CASE("pullback and image translate along a base point") {
  SetFamily g = family_of(1, {{1}});
  auto f = sigma_pullback(g, {0}, 4, 2);
  CHECK(f.m == 4);
  CHECK(f.n == 1);
  CHECK(f.ell == 0);
  CHECK(f.members() == std::vector<std::size_t>{1, 2});
  CHECK(sigma_image(f, {0}, 2) == g);

  auto eq = is_equivalent_to_set_family(f, 2);
  REQUIRE(eq.has_value());
  CHECK(sigma_pullback(eq->second, eq->first, f.m, 2) == f);

  std::mt19937 rng(0xA30004);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 2 + static_cast<int>(rng() % 5);
    int s = 1 + static_cast<int>(rng() % (m / 2));
    int n = 1 + static_cast<int>(rng() % 2);
    int ell = static_cast<int>(rng() % 2);
    SetFamily base(n + ell);
    for (std::uint32_t mask = 0; mask < (1u << (n + ell)); ++mask)
      if (rng() % 3 == 0) base.add(mask);
    std::vector<int> y(n);
    for (int& v : y) v = static_cast<int>(rng() % m);
    auto pulled = sigma_pullback(base, y, m, s);
    auto back = is_equivalent_to_set_family(pulled, s);
    REQUIRE(back.has_value());
    CHECK(sigma_pullback(back->second, back->first, m, s) == pulled);
  }

  CHECK_THROWS_AS(is_equivalent_to_set_family(HammingFamily(31, 3, 0), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(sigma_pullback(g, {5}, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(sigma_pullback(family_of(1, {{1}}), {0, 0}, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(sigma_image(f, {0, 0}, 2), std::invalid_argument);
}

TEST_CASE("hamming oracle pins small ground truths") {
  CHECK(hamming_oracle(3, 2, 1, 1).size == 3);
  CHECK(hamming_oracle(4, 2, 1, 1).size == 4);
  CHECK(hamming_oracle(4, 2, 1, 2).size == 8);
  CHECK(hamming_oracle(2, 3, 2, 1).size == 2);

  for (auto [m, n, t, s] : std::vector<std::array<int, 4>>{
           {3, 2, 1, 1}, {4, 2, 1, 1}, {4, 2, 1, 2}, {2, 3, 2, 1}, {5, 2, 2, 2}}) {
    auto r = hamming_oracle(m, n, t, s);
    CHECK(static_cast<long long>(r.witness.size()) == r.size);
    CHECK(is_t_agreeing_upto_s(r.witness, t, s));
  }

  auto degenerate = hamming_oracle(4, 1, 2, 1, {.with_count = true, .with_families = true});
  CHECK(degenerate.size == 0);
  CHECK(degenerate.witness.empty());
  REQUIRE(degenerate.count.has_value());
  CHECK(*degenerate.count == 1);
  REQUIRE(degenerate.optima.has_value());
  CHECK(degenerate.optima->size() == 1);

  CHECK_THROWS_AS(hamming_oracle(4, 2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(hamming_oracle(3, 2, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(hamming_oracle(5, 4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(hamming_oracle(3, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("hamming oracle agrees with subset enumeration") {
  for (auto [m, n, t, s] : std::vector<std::array<int, 4>>{{3, 2, 1, 1}, {2, 3, 2, 1}}) {
    HammingFamily space(m, n, 0);
    const int pts = static_cast<int>(space.points());
    REQUIRE(pts <= 10);
    long long best = 0;
    Int count = 0;
    for (std::uint32_t mask = 0; mask < (1u << pts); ++mask) {
      std::vector<int> mem;
      for (int i = 0; i < pts; ++i)
        if ((mask >> i) & 1u) mem.push_back(i);
      bool ok = true;
      for (std::size_t a = 0; a < mem.size() && ok; ++a)
        for (std::size_t b = a; b < mem.size() && ok; ++b)
          if (s_agreement_count(space, mem[a], mem[b], s) < t) ok = false;
      if (!ok) continue;
      auto sz = static_cast<long long>(mem.size());
      if (sz > best) {
        best = sz;
        count = 1;
      } else if (sz == best) {
        ++count;
      }
    }
    auto r = hamming_oracle(m, n, t, s, {.with_count = true});
    CHECK(r.size == best);
    REQUIRE(r.count.has_value());
    CHECK(*r.count == count);
  }
}

TEST_CASE("coordinate reduction trades the last circle for a binary digit") {
  HammingFamily f(2, 1, 1);
  f.add(f.index_of({0}, {1}));
  auto rr = reduce_coordinate(f, 2, 1);
  CHECK(rr.family.n == 0);
  CHECK(rr.family.ell == 2);
  CHECK(rr.family.members() == std::vector<std::size_t>{3});
  CHECK(hybrid_measure(rr.family, 1) == hybrid_measure(f, 1));
  REQUIRE(rr.instance.size() == 1);
  CHECK(rr.instance.solution == std::vector<Rat>{make_rat(1, 2)});
  CHECK(rr.instance.edges == std::vector<std::pair<int, int>>{{0, 0}});

  CHECK_THROWS_AS(reduce_coordinate(rr.family, 2, 1), PreconditionError);
  CHECK_THROWS_AS(reduce_coordinate(f, 0, 1), PreconditionError);
  HammingFamily bad(2, 1, 0);
  bad.add(0);
  bad.add(1);
  CHECK_THROWS_AS(reduce_coordinate(bad, 1, 1), PreconditionError);
}

TEST_CASE("reduction chains never lose measure") {
  std::mt19937 rng(0xA30005);
  int reduced_runs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int m = 2 + static_cast<int>(rng() % 4);
    int s = 1 + static_cast<int>(rng() % (m / 2));
    int n = 1 + static_cast<int>(rng() % 2);
    int t = 1 + static_cast<int>(rng() % n);
    int ell = static_cast<int>(rng() % 3);
    auto f = random_t_agreeing(rng, m, n, ell, t, s);
    if (f.empty()) continue;
    REQUIRE(is_t_agreeing_upto_s(f, t, s));
    HammingFamily cur = f;
    for (int step = 0; step < n; ++step) {
      auto rr = reduce_coordinate(cur, t, s);
      CHECK(rr.family.n == cur.n - 1);
      CHECK(rr.family.ell == cur.ell + 1);
      CHECK(hybrid_measure(rr.family, s) >= hybrid_measure(cur, s));
      CHECK(is_t_agreeing_upto_s(rr.family, t, s));
      if (rr.instance.size() > 0) {
        CHECK(stable_set_feasible(rr.instance, rr.instance.solution));
        for (const auto& v : rr.instance.solution)
          CHECK((v == Rat(0) || v == make_rat(1, 2) || v == Rat(1)));
      }
      cur = rr.family;
      ++reduced_runs;
    }
    auto g = reduce_full(f, t, s);
    CHECK(g.n == n + ell);
    CHECK(is_t_intersecting(g, t));
    CHECK(measure(g, make_rat(s, m)) >= hybrid_measure(f, s));
    CHECK(measure(g, make_rat(s, m)) <= w_closed(g.n, t, make_rat(s, m)).value);
  }
  CHECK(reduced_runs > 20);
}

TEST_CASE("half integral maximizer matches exhaustive packing") {
  StableSetInstance cycle;
  for (int i = 0; i < 5; ++i) {
    cycle.vertices.push_back(i);
    cycle.weight.push_back(Rat(1));
    cycle.edges.emplace_back(i, (i + 1) % 5);
  }
  auto sol = half_integral_max(cycle);
  CHECK(stable_set_feasible(cycle, sol));
  CHECK(stable_set_objective(cycle, sol) == make_rat(5, 2));
  CHECK(stable_set_exhaustive_max(cycle) == make_rat(5, 2));

  StableSetInstance path;
  path.vertices = {10, 11, 12};
  path.weight = {Rat(1), Rat(1), Rat(1)};
  path.edges = {{0, 1}, {1, 2}};
  CHECK(stable_set_objective(path, half_integral_max(path)) == Rat(2));
  CHECK(stable_set_exhaustive_max(path) == Rat(2));

  StableSetInstance loop;
  loop.vertices = {0};
  loop.weight = {Rat(1)};
  loop.edges = {{0, 0}};
  CHECK(stable_set_objective(loop, half_integral_max(loop)) == make_rat(1, 2));
  CHECK(stable_set_exhaustive_max(loop) == make_rat(1, 2));

  StableSetInstance zero;
  zero.vertices = {0};
  zero.weight = {Rat(0)};
  CHECK_THROWS_AS(half_integral_max(zero), std::invalid_argument);

  std::mt19937 rng(0xA30006);
  for (int trial = 0; trial < 100; ++trial) {
    int nv = 1 + static_cast<int>(rng() % 12);
    StableSetInstance inst;
    for (int i = 0; i < nv; ++i) {
      inst.vertices.push_back(i);
      inst.weight.push_back(make_rat(1 + static_cast<int>(rng() % 5),
                                     1 + static_cast<int>(rng() % 3)));
    }
    for (int i = 0; i < nv; ++i)
      for (int j = i; j < nv; ++j)
        if (rng() % 4 == 0) inst.edges.emplace_back(i, j);
    auto best = half_integral_max(inst);
    CHECK(stable_set_feasible(inst, best));
    CHECK(stable_set_objective(inst, best) == stable_set_exhaustive_max(inst));
  }
}
