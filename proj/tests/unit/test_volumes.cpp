#include "doctest.h"

#include "heiscc/errors.hpp"
#include "heiscc/lattice.hpp"
#include "heiscc/oracles.hpp"
#include "heiscc/volumes.hpp"

using namespace heiscc;

namespace {

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

}  // namespace

TEST_SUITE("volumes") {

TEST_CASE("polygon integrals") {
  const std::vector<Vec2> unit{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  const std::vector<Vec2> simplex{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  Quadratic2 one, xx, xy;
  one.c = 1;
  xx.a1 = 1;
  xy.a2 = 1;
  CHECK(integrate_quadratic_over_polygon(one, unit) == 1);
  CHECK(integrate_quadratic_over_polygon(xx, unit) == make_rational(1, 3));
  CHECK(integrate_quadratic_over_polygon(xy, simplex) == make_rational(1, 24));
}

TEST_CASE("ball volumes of the square") {
  const VolumeReport r = ball_volumes(l1());
  CHECK(r.V == make_rational(31, 72));
  CHECK(r.V_reg == make_rational(19, 72));
  CHECK(r.V_uns == make_rational(1, 6));
  CHECK(r.unique_probability == make_rational(19, 31));
  CHECK(r.by_directions.at(3) == make_rational(11, 54));
  CHECK(r.by_directions.at(4) == make_rational(13, 216));
  for (int k = 1; k <= 4; ++k) CHECK(side_panel_cone_volume(l1(), k) == make_rational(1, 24));
}

TEST_CASE("ball volumes of the hexagon") {
  const VolumeReport r = ball_volumes(PanelAtlas::build(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true).L));
  CHECK(r.V == r.V_reg + r.V_uns);
  CHECK(r.V == make_rational(103, 120));
  CHECK(r.V_uns == make_rational(1, 4));
}

TEST_CASE("sector cone volumes") {
  const auto& L = l1().L().vertices();
  CHECK(sector_cone_volume(l1(), L) == make_rational(31, 72));
  const std::vector<Vec2> quarter{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  CHECK(sector_cone_volume(l1(), quarter) == make_rational(31, 288));
  CHECK(sector_cone_volume(l1(), std::vector<Vec2>{}) == 0);
  const std::vector<Vec2> outside{Vec2(0, 0), Vec2(2, 0), Vec2(0, 2)};
  CHECK_THROWS_AS(sector_cone_volume(l1(), outside), RegionOutsideQ);
}

TEST_CASE("panel volumes agree with sampling") {
  for (std::size_t q = 0; q < l1().quads().size(); ++q) {
    const double exact = to_double(panel_cone_volume(l1(), q));
    const McEstimate e = mc_panel_volume(l1(), q, 400000, 11 + q, 1);
    CHECK(std::abs(e.volume - exact) < 5 * e.std_error + 1e-12);
  }
  const double side = 1.0 / 24;
  const McEstimate e = mc_side_volume(l1(), 1, 400000, 3, 1);
  CHECK(std::abs(e.volume - side) < 5 * e.std_error);
}

TEST_CASE("sampling is independent of the thread count") {
  const McEstimate a = mc_panel_volume(l1(), 0, 100000, 5, 1);
  const McEstimate b = mc_panel_volume(l1(), 0, 100000, 5, 4);
  CHECK(a.hits == b.hits);
}

}
