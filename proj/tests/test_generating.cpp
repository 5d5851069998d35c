#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "akx/generating.hpp"
#include "akx/symmetrization.hpp"

using namespace akx;

namespace {

SetFamily seeded_normalized(std::mt19937_64& rng, int n, int t) {
  const int rmax = (n - t) / 2;
  const int r = rmax > 0 ? int(rng() % (rmax + 1)) : 0;
  SetFamily f = frankl(n, t, r);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  f = permute_points(f, perm);
  for (auto m : f.members())
    if (rng() % 4 != 0) f.ind.reset(m);
  return compress_and_close(f);
}

}  // namespace

TEST_CASE("generators are the minimal members and rebuild the family") {
  std::mt19937_64 rng(31);
  int used = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + int(rng() % 7);
    const int t = 1 + int(rng() % std::min(n, 3));
    const SetFamily f = seeded_normalized(rng, n, t);
    if (f.empty()) continue;
    ++used;
    const GeneratingData gd = generating_data(f);
    CHECK(up_set(gd.generators) == f);
    // antichain: no generator contains another
    const auto gens = gd.generators.members();
    for (auto g1 : gens)
      for (auto g2 : gens)
        if (g1 != g2) CHECK((g1 & g2) != g1);
    // every generator is minimal in f
    for (auto g : gens)
      for (int i = 0; i < n; ++i)
        if ((g >> i) & 1u) CHECK_FALSE(f.contains(g ^ (1u << i)));
    // extent: largest point named by any generator
    int ext = 0;
    for (auto g : gens)
      for (int i = 1; i <= n; ++i)
        if ((g >> (i - 1)) & 1u) ext = std::max(ext, i);
    CHECK(gd.extent == ext);
    // boundary: generators through the extent point, partitioned by size
    SetFamily bd(n);
    for (auto g : gens)
      if (gd.extent >= 1 && ((g >> (gd.extent - 1)) & 1u)) bd.add(g);
    CHECK(gd.boundary == bd);
    for (int a = 0; a <= n; ++a)
      for (auto g : gd.by_size[a].members()) {
        CHECK(popcount32(g) == a);
        CHECK(bd.contains(g));
      }
  }
  CHECK(used > 100);
}

TEST_CASE("generating data named example") {
  const GeneratingData gd = generating_data(frankl(5, 2, 1));
  CHECK(gd.extent == 4);
  CHECK(gd.generators.size() == 4);  // the 3-subsets of the window [4]
  CHECK(gd.boundary.size() == 3);
  CHECK(gd.by_size[3].size() == 3);
  CHECK(gd.by_size[2].empty());
}

TEST_CASE("generating data preconditions") {
  CHECK_THROWS_AS(generating_data(SetFamily(3)), PreconditionError);
  SetFamily full(2);
  for (std::uint32_t m = 0; m < 4; ++m) full.add(m);
  CHECK_THROWS_AS(generating_data(full), PreconditionError);
  CHECK_THROWS_AS(generating_data(family_of(3, {{1, 2}, {3}})), PreconditionError);
}

TEST_CASE("two-sided boundary surgery named instance") {
  auto [f1, f2] = gs2_transform(frankl(5, 3, 0), 2, 2, 3);
  CHECK(f1 == up_set(family_of(5, {{1, 2}})));
  CHECK(f2 == SetFamily(5));
  CHECK(is_t_intersecting(f1, 2));

  const Rat p = make_rat(2, 5);
  const Rat mf = measure(frankl(5, 3, 0), p);
  CHECK(measure(f1, p) == p * p);
  CHECK(measure(f1, p) > mf);  // strict improvement below 1/2

  CHECK_THROWS_AS(gs2_transform(frankl(5, 3, 0), 2, 2, 2), PreconditionError);
  CHECK_THROWS_AS(gs2_transform(frankl(5, 3, 0), 2, 1, 4), PreconditionError);
  CHECK_THROWS_AS(gs2_transform(family_of(3, {{1, 2}, {3}}), 1, 1, 2), PreconditionError);
}

TEST_CASE("one-sided boundary surgery named instance") {
  // dropping the generators through i strips the rest off the extent point
  CHECK(gs3_transform(frankl(4, 1, 1), 1, 1) == up_set(family_of(4, {{2}})));
  CHECK(gs3_transform(frankl(4, 1, 1), 1, 2) == up_set(family_of(4, {{1}})));
  const Rat p = make_rat(2, 5);
  CHECK(measure(gs3_transform(frankl(4, 1, 1), 1, 1), p) == p);
  CHECK(measure(gs3_transform(frankl(4, 1, 1), 1, 1), p) > measure(frankl(4, 1, 1), p));

  // dropping the lone generator empties the family; the identity still holds
  CHECK(gs3_transform(frankl(4, 2, 0), 2, 1) == SetFamily(4));

  CHECK_THROWS_AS(gs3_transform(frankl(4, 1, 1), 1, 3), PreconditionError);
  CHECK_THROWS_AS(gs3_transform(frankl(4, 1, 1), 1, 0), PreconditionError);
  CHECK_THROWS_AS(gs3_transform(up_set(family_of(3, {{1, 2}})), 1, 1),
                  PreconditionError);  // extent + t odd
}

TEST_CASE("surgery outputs stay t-intersecting across a seeded sweep") {
  std::mt19937_64 rng(32);
  int gs2_runs = 0, gs3_runs = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + int(rng() % 6);
    const int t = 1 + int(rng() % std::min(n, 3));
    const SetFamily f = seeded_normalized(rng, n, t);
    if (f.empty()) continue;
    const GeneratingData gd = generating_data(f);
    const int m = gd.extent;
    for (int a = 0; a <= f.n; ++a) {
      const int b = m + t - a;
      if (a >= b || b < 0 || b > f.n) continue;
      if (gd.by_size[a].empty() && gd.by_size[b].empty()) continue;
      auto [f1, f2] = gs2_transform(f, t, a, b);
      CHECK(is_t_intersecting(f1, t));
      CHECK(is_t_intersecting(f2, t));
      CHECK(is_monotone(f1));
      CHECK(is_monotone(f2));
      ++gs2_runs;
    }
    if (m > 1 && (m + t) % 2 == 0 && !gd.by_size[(m + t) / 2].empty())
      for (int i = 1; i <= m - 1; ++i) {
        const SetFamily fi = gs3_transform(f, t, i);
        CHECK(is_t_intersecting(fi, t));
        CHECK(is_monotone(fi));
        ++gs3_runs;
      }
  }
  CHECK(gs2_runs > 20);
  CHECK(gs3_runs > 20);
}
