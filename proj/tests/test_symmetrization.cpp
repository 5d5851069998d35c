#include <catch2/catch_amalgamated.hpp>

#include <random>

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

TEST_CASE("symmetry data recomputed from first principles") {
  std::mt19937_64 rng(41);
  int used = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + int(rng() % 7);
    const int t = 1 + int(rng() % std::min(n, 3));
    const SetFamily f = seeded_normalized(rng, n, t);
    if (f.empty()) continue;
    ++used;
    const SymmetryData sd = symmetry_data(f);
    const int l = sd.sym_extent;

    // invariance under every transposition inside [l], broken at l+1
    for (int i = 1; i < l; ++i) CHECK(shift_ij(f, i, i + 1) == f);
    for (int i = 1; i < l; ++i) CHECK(shift_ij(f, i + 1, i) == f);
    if (l < f.n) CHECK((shift_ij(f, l, l + 1) != f || shift_ij(f, l + 1, l) != f));

    // never beyond the generating extent
    CHECK(l <= generating_data(f).extent);

    if (l == f.n) {
      CHECK(sd.boundary.empty());
      continue;
    }
    // boundary from the definition: quantify over every i in A cap [l]
    SetFamily bd(f.n);
    std::vector<SetFamily> slices(l + 1, SetFamily(f.n));
    const std::uint32_t lp1 = 1u << l;
    for (auto m : f.members()) {
      if (m & lp1) continue;
      const std::uint32_t inside = m & prefix_mask(l);
      if (inside == 0) continue;
      bool all_block = true, any_block = false;
      for (int i = 1; i <= l; ++i)
        if ((inside >> (i - 1)) & 1u) {
          const bool blocks = !f.contains((m ^ (1u << (i - 1))) | lp1);
          all_block = all_block && blocks;
          any_block = any_block || blocks;
        }
      CHECK(all_block == any_block);  // symmetry makes the choice of i immaterial
      if (all_block) {
        bd.add(m);
        slices[popcount32(inside)].add(m & ~prefix_mask(l));
      }
    }
    CHECK(sd.boundary == bd);
    REQUIRE(sd.slices.size() == std::size_t(l + 1));
    CHECK(sd.slices[0].empty());
    for (int a = 0; a <= l; ++a) CHECK(sd.slices[a] == slices[a]);
  }
  CHECK(used > 100);
}

TEST_CASE("symmetry data named example") {
  const SymmetryData sd = symmetry_data(frankl(4, 2, 0));
  CHECK(sd.sym_extent == 2);
  CHECK(sd.slices[2] == family_from_masks(4, {0, 0b1000u}));
  CHECK(sd.slices[1].empty());
  CHECK(symmetry_data(frankl(4, 2, 1)).sym_extent == 4);
  CHECK_THROWS_AS(symmetry_data(family_of(3, {{3}})), PreconditionError);
}

TEST_CASE("block assembly and mass") {
  const SetFamily block = assemble_block(4, prefix_mask(2), 1, 0, family_from_masks(4, {0b1000u}));
  CHECK(block == family_of(4, {{1, 4}, {2, 4}}));
  const Rat p = make_rat(1, 3);
  CHECK(boundary_block_mass(frankl(4, 2, 0), symmetry_data(frankl(4, 2, 0)), 2, p) ==
        measure(family_of(4, {{1, 2}, {1, 2, 4}}), p));
  CHECK(boundary_block_mass(frankl(4, 2, 0), symmetry_data(frankl(4, 2, 0)), 7, p) == 0);
}

TEST_CASE("push-pull surgery named instance") {
  auto [f1, f2] = sym2_transform(frankl(5, 3, 0), 2, 2, 3);
  CHECK(f1 == family_of(5, {{1, 2, 3, 4}, {1, 2, 3, 4, 5}}));
  CHECK(f2 == family_of(5, {{1, 2, 3},
                            {1, 2, 4},
                            {1, 3, 4},
                            {2, 3, 4},
                            {1, 2, 3, 4},
                            {1, 2, 3, 5},
                            {1, 2, 4, 5},
                            {1, 3, 4, 5},
                            {2, 3, 4, 5},
                            {1, 2, 3, 4, 5}}));
  CHECK(is_t_intersecting(f1, 2));
  CHECK(is_t_intersecting(f2, 2));
  // t = 2 > 1: the better side strictly improves at every p
  for (int num = 1; num <= 9; ++num) {
    const Rat p = make_rat(num, 10);
    const Rat mf = measure(frankl(5, 3, 0), p);
    CHECK(std::max(measure(f1, p), measure(f2, p)) > mf);
  }
  CHECK_THROWS_AS(sym2_transform(frankl(5, 3, 0), 2, 1, 4), PreconditionError);
  CHECK_THROWS_AS(sym2_transform(frankl(4, 2, 1), 2, 2, 4), PreconditionError);  // l = n
}

TEST_CASE("middle-slice push surgery named instance") {
  const SetFamily out = sym3_transform(frankl(4, 2, 0), 2);
  CHECK(out == family_of(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}}));
  CHECK(is_t_intersecting(out, 2));
  CHECK(measure(out, make_rat(1, 2)) == make_rat(5, 16));
  // gain sign flips at p = (l-t+2)/(2l+2) = 1/3
  CHECK(measure(out, make_rat(1, 3)) == measure(frankl(4, 2, 0), make_rat(1, 3)));
  CHECK(measure(out, make_rat(1, 5)) < measure(frankl(4, 2, 0), make_rat(1, 5)));
  CHECK(measure(out, make_rat(2, 5)) > measure(frankl(4, 2, 0), make_rat(2, 5)));

  CHECK(sym3_transform(frankl(4, 2, 0), 2, 4) == out);
  CHECK_THROWS_AS(sym3_transform(frankl(4, 2, 0), 2, 3), PreconditionError);  // s = l+1
  CHECK_THROWS_AS(sym3_transform(frankl(4, 2, 0), 2, 2), PreconditionError);  // s <= extent
  CHECK_THROWS_AS(sym3_transform(frankl(4, 1, 1), 1), PreconditionError);     // no spare s
}

TEST_CASE("compress and close normalizes") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(rng() % 7);
    const int t = 1 + int(rng() % std::min(n, 3));
    SetFamily f = frankl(n, t, (n - t) / 2 > 0 ? int(rng() % ((n - t) / 2 + 1)) : 0);
    for (auto m : f.members())
      if (rng() % 3 != 0) f.ind.reset(m);
    if (f.empty()) continue;
    const SetFamily g = compress_and_close(f);
    CHECK(is_monotone(g));
    CHECK(is_left_compressed(g));
    CHECK(is_t_intersecting(g, t));
    for (int num = 1; num <= 4; ++num)
      CHECK(measure(g, make_rat(num, 5)) >= measure(f, make_rat(num, 5)));
    CHECK(compress_and_close(g) == g);
  }
}

TEST_CASE("composite improvement search") {
  const auto hit = sym3plus_improve(frankl(4, 2, 0), 2, make_rat(1, 2));
  REQUIRE(hit.has_value());
  CHECK(measure(*hit, make_rat(1, 2)) == make_rat(5, 16));
  CHECK(is_t_intersecting(*hit, 2));
  // w_closed(4,2,1/2) = 5/16: the composite route reaches the optimum
  CHECK_FALSE(sym3plus_improve(frankl(4, 2, 1), 2, make_rat(1, 2)).has_value());
}
