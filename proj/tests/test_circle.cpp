#include <catch2/catch_amalgamated.hpp>

#include "akx/circle.hpp"

using namespace akx;

TEST_CASE("circle primitives") {
  CHECK(zm_full(5) == 0b11111u);
  CHECK(zm_rotate(0b11u, 2, 6) == 0b1100u);
  CHECK(zm_rotate(0b100001u, 1, 6) == 0b000011u);
  CHECK(zm_rotate(zm_rotate(0b1011u, 4, 7), -4, 7) == 0b1011u);
  CHECK(zm_window(6, 1) == 0b1u);
  CHECK(zm_window(6, 2) == 0b100011u);  // {-1, 0, 1}

  CHECK_THROWS_AS(ZmSet(6, 1u << 6), std::invalid_argument);
  const ZmSet a(6, 0b000011u);
  CHECK(a.size() == 2);
  CHECK(a.contains(0));
  CHECK_FALSE(a.contains(2));
}

TEST_CASE("agreement and intervals") {
  // {0} is within distance 1 of both 5 and 0; adding 1 breaks the pair (1,5)
  CHECK(is_cross_s_agreeing(ZmSet(6, 0b000001u), ZmSet(6, 0b100001u), 2));
  CHECK_FALSE(is_cross_s_agreeing(ZmSet(6, 0b000011u), ZmSet(6, 0b100001u), 2));
  CHECK_FALSE(is_cross_s_agreeing(ZmSet(6, 0b000011u), ZmSet(6, 0b001100u), 2));
  CHECK(is_s_agreeing(ZmSet(6, 0b000011u), 2));
  CHECK_FALSE(is_s_agreeing(ZmSet(10, (1u << 9) | 0b11u), 2));  // 9 and 1 differ by 2

  CHECK(is_interval(ZmSet(10, (1u << 9) | 0b11u)));  // {9,0,1} wraps
  CHECK(is_interval(ZmSet(6, 0b001110u)));
  CHECK_FALSE(is_interval(ZmSet(6, 0b000101u)));
  CHECK_FALSE(is_interval(ZmSet(6, 0)));

  // centers: {1,2,3} sits at 2; the wrap {5,0} at 11/2
  CHECK(interval_center(ZmSet(6, 0b001110u)) == Rat(2));
  CHECK(interval_center(ZmSet(6, 0b100001u)) == make_rat(11, 2));
  CHECK_FALSE(interval_center(ZmSet(6, 0b000101u)).has_value());
}

TEST_CASE("katona cross verification named grids") {
  const KatonaReport r62 = verify_katona_cross(6, 2);
  CHECK(r62.ok);
  CHECK(r62.failures.empty());
  CHECK_FALSE(r62.equality_pairs.empty());
  for (const auto& pr : r62.equality_pairs) {
    CHECK(pr.a_size + pr.b_size == 4);
    CHECK(is_cross_s_agreeing(ZmSet(6, pr.a_bits), ZmSet(6, pr.b_bits), 2));
    CHECK(is_interval(ZmSet(6, pr.a_bits)));
    CHECK(is_interval(ZmSet(6, pr.b_bits)));
    REQUIRE(pr.center.has_value());
    CHECK(interval_center(ZmSet(6, pr.a_bits)) == *pr.center);
    CHECK(interval_center(ZmSet(6, pr.b_bits)) == *pr.center);
  }
  CHECK_FALSE(katona_report_lines(r62).empty());

  // halfway window: equality pairs follow the shifted-complement rule instead
  const KatonaReport r63 = verify_katona_cross(6, 3);
  CHECK(r63.ok);
  for (const auto& pr : r63.equality_pairs) CHECK(pr.a_size + pr.b_size == 6);

  for (int m = 2; m <= 10; ++m)
    for (int s = 1; 2 * s <= m; ++s) {
      const KatonaReport rep = verify_katona_cross(m, s);
      CHECK(rep.ok);
      CHECK(rep.failures.empty());
    }
  CHECK_THROWS_AS(verify_katona_cross(6, 4), std::invalid_argument);
  CHECK_THROWS_AS(verify_katona_cross(15, 1), std::invalid_argument);
}
