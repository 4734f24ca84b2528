#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "heiscc/errors.hpp"
#include "heiscc/lattice.hpp"

using namespace heiscc;

namespace {

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

const WordBall& b8() {
  static const WordBall b = bfs_ball(GenSet::standard(), 8, default_mem_budget(), 1);
  return b;
}

}  // namespace

TEST_SUITE("heis_lattice") {

TEST_CASE("group law") {
  CHECK(mul({1, 0, 0}, {0, 1, 0}) == HeisPoint{1, 1, 1});
  CHECK(mul(mul({1, 0, 0}, {0, 1, 0}), mul(inv({1, 0, 0}), inv({0, 1, 0}))) == HeisPoint{0, 0, 2});
  CHECK(inv({1, 1, 1}) == HeisPoint{-1, -1, -1});
  CHECK(inv({4, 0, 6}) == HeisPoint{-4, 0, -6});
  CHECK(inv({}) == HeisPoint{});
  CHECK(mul({3, -2, 5}, inv({3, -2, 5})) == HeisPoint{});
  CHECK(HeisPoint{4, 0, 6}.to_cc().z == 3);
  CHECK_THROWS_AS(HeisPoint::checked(1, 1, 2), InvalidInput);
}

TEST_CASE("word balls") {
  const WordBall& b = b8();
  CHECK(b.sphere_sizes()[1] == 4);
  CHECK(b.sphere_sizes()[2] == 12);
  CHECK(*b.length({0, 0, 2}) == 4);
  CHECK(*b.length({4, 0, 6}) == 6);
  CHECK(*b.length({2, 2, 4}) == 4);
  CHECK_FALSE(b.length({9, 0, 0}));
}

TEST_CASE("ball of radius sixteen") {
  const WordBall b = bfs_ball(GenSet::standard(), 16);
  CHECK(b.size() == 27905);
  std::size_t bad = 0;
  b.for_each([&](const HeisPoint& p, std::uint32_t len) { bad += word_length_std(p, l1()) == len ? 0 : 1; });
  CHECK(bad == 0);
  const KratGap g = krat_gap_scan(b, l1());
  CHECK(g.min_gap == AlgebraicScalar(0));
  CHECK(g.max_gap < AlgebraicScalar(2));
}

TEST_CASE("closed-form word length") {
  CHECK(word_length_std({4, 0, 6}, l1()) == 6);
  CHECK(word_length_std({0, 0, 2}, l1()) == 4);
  CHECK(word_length_std({2, 2, 4}, l1()) == 4);
  CHECK(word_length_std({}, l1()) == 0);
}

TEST_CASE("parity") {
  CHECK(parity_check({4, 0, 0}, 6));
  CHECK_FALSE(parity_check({1, 0, 0}, 2));
  CHECK(parity_check({0, 0, 2}, 4));
}

TEST_CASE("geodesic point sets and spread") {
  auto pts = geodesic_point_set(b8(), {5, 0, 0});
  std::sort(pts.begin(), pts.end());
  REQUIRE(pts.size() == 6);
  for (long k = 0; k <= 5; ++k) CHECK(pts[static_cast<std::size_t>(k)] == HeisPoint{k, 0, 0});
  const auto loop = geodesic_point_set(b8(), {0, 0, 2});
  CHECK(std::count(loop.begin(), loop.end(), HeisPoint{1, 0, 0}) == 1);
  CHECK(std::count(loop.begin(), loop.end(), HeisPoint{0, 1, 0}) == 1);
  CHECK(geodesic_point_set(b8(), {}).size() == 1);
  CHECK(spread(b8(), {6, 0, 0}) == 0);
  CHECK(spread(b8(), {2, 2, 0}) >= 1);
  CHECK(spread(b8(), {4, 4, 0}) > spread(b8(), {2, 2, 0}));
  CHECK_THROWS_AS(spread(b8(), {9, 0, 0}), OutOfRange);
}

TEST_CASE("dumps round-trip") {
  std::stringstream ss;
  write_wordball(ss, b8());
  CHECK(ss.str().substr(0, 4) == "HZWB");
  const WordBall back = read_wordball(ss);
  CHECK(back.sorted_entries() == b8().sorted_entries());
  std::stringstream junk("nope");
  CHECK_THROWS(read_wordball(junk));
}

TEST_CASE("thread count does not change the table") {
  const WordBall a = bfs_ball(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true), 8, default_mem_budget(), 1);
  const WordBall b = bfs_ball(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true), 8, default_mem_budget(), 4);
  CHECK(a.sorted_entries() == b.sorted_entries());
}

TEST_CASE("memory budget") { CHECK_THROWS_AS(bfs_ball(GenSet::standard(), 40, 1 << 20), MemoryBudgetExceeded); }

}
