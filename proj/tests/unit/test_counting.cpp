#include "doctest.h"

#include "heiscc/cc_metric.hpp"
#include "heiscc/counting.hpp"
#include "heiscc/volumes.hpp"

using namespace heiscc;

namespace {

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

std::uint64_t brute_annulus(std::int64_t n) {
  std::uint64_t c = 0;
  for (long x = -n; x <= n; ++x)
    for (long y = -n; y <= n; ++y)
      for (long w = -n * n; w <= n * n; ++w) {
        if (((w - x * y) & 1) != 0) continue;
        const CCPoint p = HeisPoint{x, y, w}.to_cc();
        if (ball_compare(l1(), p, Rational(n)) != BallRelation::Outside && ball_compare(l1(), p, Rational(n - 1)) == BallRelation::Outside) ++c;
      }
  return c;
}

}  // namespace

TEST_SUITE("counting_harness") {

TEST_CASE("small annuli") {
  CHECK(annulus_count(l1(), 1) == 4);
  for (std::int64_t n = 1; n <= 6; ++n) CHECK(annulus_count(l1(), n) == brute_annulus(n));
  std::uint64_t total = 1;
  for (std::int64_t n = 1; n <= 6; ++n) total += annulus_count(l1(), n);
  CHECK(ball_count(l1(), 6) == total);
}

TEST_CASE("sectors") {
  const auto quarters = symmetric_sectors(l1().L(), 4);
  CHECK(quarters.size() == 4);
  CHECK(symmetric_sectors(l1().L(), 8).size() == 8);
  CHECK_THROWS(symmetric_sectors(l1().L(), 5));
  CHECK(quarters[0].contains(Vec2(0, 0)));
  CHECK_FALSE(quarters[1].contains(Vec2(0, 0)));
  CHECK(region_cone_volume(l1(), Region{quarters[0], Part::All}) == make_rational(31, 288));
  CHECK(region_cone_volume(l1(), Region{std::nullopt, Part::Unstable}) == make_rational(1, 6));
  std::uint64_t sum = 0;
  for (const auto& s : quarters) sum += annulus_count(l1(), 30, Region{s, Part::All});
  CHECK(sum == annulus_count(l1(), 30));
}

TEST_CASE("closed-form spheres match the word ball") {
  const WordBall b = bfs_ball(GenSet::standard(), 16);
  for (std::int64_t n = 0; n <= 16; ++n) {
    CHECK(sphere_sector_count_std(l1(), n) == b.sphere_sizes()[static_cast<std::size_t>(n)]);
    CHECK(sphere_sector_count(b, l1(), n) == b.sphere_sizes()[static_cast<std::size_t>(n)]);
  }
  const auto secs = symmetric_sectors(l1().L(), 8);
  const auto per = sphere_sector_counts_std(l1(), 16, secs);
  for (std::size_t k = 0; k < secs.size(); ++k) CHECK(per[k] == sphere_sector_count(b, l1(), 16, Region{secs[k], Part::All}));
}

TEST_CASE("quarter sectors carry a quarter of the sphere") {
  const SectorMeasure m = sector_measure_std(l1(), 200, symmetric_sectors(l1().L(), 4));
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(static_cast<double>(m.counts[k]) / static_cast<double>(m.total) - 0.25) < 1e-3);
}

TEST_CASE("ball counts approach V n^4") {
  const CensusTable t = convergence_table(CountMode::Ball, l1(), {200});
  CHECK(std::abs(t.rows[0].ratio - 1) < 0.02);
}

TEST_CASE("count modes parse") {
  CHECK(parse_count_mode("annulus") == CountMode::Annulus);
  CHECK(to_string(CountMode::Sphere) == "sphere");
  CHECK_THROWS(parse_count_mode("cube"));
}

}
