#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "akx/set_family.hpp"
#include "akx/shifting.hpp"

using namespace akx;

namespace {

SetFamily random_family(std::mt19937_64& rng, int n, int mod) {
  SetFamily f(n);
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (rng() % mod == 0) f.add(m);
  return f;
}

}  // namespace

TEST_CASE("shift_ij moves i to j") {
  const SetFamily f = family_of(3, {{2}, {2, 3}});
  CHECK(shift_ij(f, 2, 1) == family_of(3, {{1}, {1, 3}}));
  // occupied target blocks the move
  CHECK(shift_ij(family_of(3, {{1}, {2}}), 2, 1) == family_of(3, {{1}, {2}}));
  CHECK_THROWS_AS(shift_ij(f, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(shift_ij(f, 1, 1), std::invalid_argument);
}

TEST_CASE("shift preserves measure, size profile, and t-intersection") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + int(rng() % 7);
    const SetFamily f = random_family(rng, n, 3);
    const int i = 1 + int(rng() % n);
    int j = 1 + int(rng() % (n - 1));
    if (j >= i) ++j;
    const SetFamily g = shift_ij(f, i, j);
    CHECK(g.size() == f.size());
    CHECK(measure(g, make_rat(2, 5)) == measure(f, make_rat(2, 5)));
    CHECK(level_counts(g) == level_counts(f));
    for (int t = 1; t <= 3; ++t)
      if (is_t_intersecting(f, t)) CHECK(is_t_intersecting(shift_ij(f, i, j), t));
  }
}

TEST_CASE("left compression reaches a compressed fixpoint") {
  CHECK(is_left_compressed(frankl(5, 2, 1)));
  CHECK_FALSE(is_left_compressed(family_of(3, {{3}})));

  const CompressResult star = left_compress(family_of(3, {{2}, {2, 3}}));
  CHECK(star.family == family_of(3, {{1}, {1, 2}}));
  REQUIRE(star.trace.size() == 2);
  CHECK(star.trace[0].i == 2);
  CHECK(star.trace[0].j == 1);

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(rng() % 8);
    const SetFamily f = random_family(rng, n, 3);
    const CompressResult res = left_compress(f);
    CHECK(is_left_compressed(res.family));
    CHECK(level_counts(res.family) == level_counts(f));
    CHECK(left_compress(res.family).family == res.family);
    CHECK(left_compress(res.family).trace.empty());
    // replaying the trace reproduces the output
    SetFamily replay = f;
    for (const auto& step : res.trace) replay = shift_ij(replay, step.i, step.j);
    CHECK(replay == res.family);
    // each step lowers the element-sum potential
    CHECK((res.trace.empty() || compression_potential(res.family) < compression_potential(f)));
  }
}

TEST_CASE("trace io round trip") {
  const CompressResult res = left_compress(family_of(4, {{3}, {2, 4}}));
  std::ostringstream out;
  write_trace(out, res.trace);
  std::istringstream in(out.str());
  const auto back = read_trace(in);
  REQUIRE(back.size() == res.trace.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].i == res.trace[k].i);
    CHECK(back[k].j == res.trace[k].j);
  }
}

TEST_CASE("shift_AB replaces A-sets by B") {
  // members containing A and avoiding B move to (S\A)uB when free
  const SetFamily f = family_of(4, {{1}, {1, 4}});
  const SetFamily g = shift_AB(f, Subset(4, 0b0001u), Subset(4, 0b0110u));
  CHECK(g == family_of(4, {{2, 3}, {2, 3, 4}}));
}

TEST_CASE("stabilize output is heavy and stable") {
  std::mt19937_64 rng(23);
  int used = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + int(rng() % 6);
    const int t = 1 + int(rng() % std::min(n, 3));
    SetFamily f = frankl(n, t, (n - t) / 2 > 0 ? int(rng() % ((n - t) / 2 + 1)) : 0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    f = permute_points(f, perm);
    for (auto m : f.members())
      if (rng() % 2 == 0) f.ind.reset(m);
    if (f.empty()) continue;
    ++used;
    const SetFamily g = stabilize(f, t);
    CHECK(is_t_intersecting(g, t));
    CHECK(measure(g, make_rat(1, 2)) == measure(f, make_rat(1, 2)));
    for (int s = 0; 2 * s + 1 <= n; ++s) CHECK(is_stable(g, s));
    const auto mem = g.members();
    for (std::size_t x = 0; x < mem.size(); ++x)
      for (std::size_t y = x; y < mem.size(); ++y)
        CHECK(popcount32(mem[x]) + popcount32(mem[y]) >= n + t - 1);
  }
  CHECK(used > 60);
  CHECK_THROWS_AS(stabilize(family_of(3, {{1}, {2}}), 1), PreconditionError);
}
