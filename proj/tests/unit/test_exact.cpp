#include "doctest.h"

#include <cmath>

#include "heiscc/errors.hpp"
#include "heiscc/exact.hpp"
#include "heiscc/polygon.hpp"

using namespace heiscc;

namespace {

ConvexPolygon square() { return ConvexPolygon::from_vertices({Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)}); }

ConvexPolygon hexagon() {
  const std::vector<Vec2> pts{Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)};
  return symmetric_hull(pts, true);
}

}  // namespace

TEST_SUITE("exact_numbers_geometry") {

TEST_CASE("rationals are canonical") {
  CHECK(to_string(make_rational(26, 14)) == "13/7");
  CHECK(to_string(make_rational(4, -2)) == "-2");
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
  CHECK(floor(make_rational(-1, 2)) == -1);
  CHECK(ceil(make_rational(-1, 2)) == 0);
}

TEST_CASE("algebraic scalars") {
  const AlgebraicScalar r(0, 4, 3);
  CHECK(r.to_string() == "4*sqrt(3)");
  CHECK(r > AlgebraicScalar(6));
  CHECK(r < AlgebraicScalar(7));
  CHECK(AlgebraicScalar(0, 1, 4) == AlgebraicScalar(2));
  CHECK(AlgebraicScalar(0, 2, 12) == AlgebraicScalar(0, 4, 3));
  CHECK(AlgebraicScalar(1, 1, 2) * AlgebraicScalar(1, -1, 2) == AlgebraicScalar(-1));
  // Different radicands still compare exactly.
  CHECK(AlgebraicScalar(0, 1, 2) + AlgebraicScalar(0) < AlgebraicScalar(0, 1, 3));
  CHECK(compare(AlgebraicScalar(make_rational(1, 2), 1, 5), AlgebraicScalar(0, 1, 7)) > 0);
  CHECK(compare(AlgebraicScalar(make_rational(1, 4), 1, 5), AlgebraicScalar(0, 1, 7)) < 0);
  CHECK(std::abs(r.to_double() - 4 * std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("positive quadratic roots") {
  auto r = solve_quadratic_positive(1, 0, -16);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == AlgebraicScalar(4));
  r = solve_quadratic_positive(1, -1, -1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == AlgebraicScalar(make_rational(1, 2), make_rational(1, 2), 5));
  r = solve_quadratic_positive(0, 2, -3);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == AlgebraicScalar(make_rational(3, 2)));
  CHECK(solve_quadratic_positive(1, 0, 1).empty());
  CHECK(solve_quadratic_positive(1, -5, 6).size() == 2);
}

TEST_CASE("symmetric hulls") {
  const std::vector<Vec2> axes{Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1)};
  CHECK(symmetric_hull(axes) == square());
  const ConvexPolygon h = hexagon();
  CHECK(h.size() == 6);
  CHECK(h == ConvexPolygon::from_vertices({Vec2(1, 0), Vec2(1, 1), Vec2(0, 1), Vec2(-1, 0), Vec2(-1, -1), Vec2(0, -1)}));
  const std::vector<Vec2> line{Vec2(2, 0), Vec2(-2, 0), Vec2(1, 0)};
  CHECK_THROWS_AS(symmetric_hull(line), DegenerateHull);
}

TEST_CASE("polar duals") {
  CHECK(polar_dual(square()) == ConvexPolygon::from_vertices({Vec2(1, 1), Vec2(-1, 1), Vec2(-1, -1), Vec2(1, -1)}));
  CHECK(polar_dual(hexagon()) ==
        ConvexPolygon::from_vertices({Vec2(1, 0), Vec2(0, 1), Vec2(-1, 1), Vec2(-1, 0), Vec2(0, -1), Vec2(1, -1)}));
  CHECK(polar_dual(polar_dual(hexagon())) == hexagon());
}

TEST_CASE("gauge norms") {
  CHECK(gauge_norm(square(), Vec2(3, 4)) == 7);
  CHECK(gauge_norm(hexagon(), Vec2(1, 1)) == 1);
  CHECK(gauge_norm(hexagon(), Vec2(0, 0)) == 0);
  CHECK(gauge_norm(hexagon(), Vec2(2, -1)) == 3);
}

TEST_CASE("shoelace") {
  const std::vector<Vec2> unit{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  const std::vector<Vec2> cw(unit.rbegin(), unit.rend());
  const std::vector<Vec2> tri{Vec2(0, 0), Vec2(4, 0), Vec2(0, 3)};
  CHECK(shoelace_area(unit) == 1);
  CHECK(shoelace_area(cw) == -1);
  CHECK(shoelace_area(tri) == 6);
}

}
