#include "doctest.h"

#include "heiscc/cc_metric.hpp"
#include "heiscc/lattice.hpp"

using namespace heiscc;

namespace {

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

CCPoint pt(long x, long y, Rational z) { return {Rational(x), Rational(y), std::move(z)}; }

}  // namespace

TEST_SUITE("cc_metric") {

TEST_CASE("spot distances") {
  CHECK(cc_distance(l1(), pt(4, 0, 3)) == AlgebraicScalar(make_rational(11, 2)));
  CHECK(cc_distance(l1(), pt(0, 0, 1)) == AlgebraicScalar(4));
  CHECK(cc_distance(l1(), pt(2, 2, 1)) == AlgebraicScalar(4));
  CHECK(cc_distance(l1(), pt(0, 0, 3)) == AlgebraicScalar(0, 4, 3));
  CHECK(cc_distance(l1(), pt(5, 0, 0)) == AlgebraicScalar(5));
  CHECK(cc_distance(l1(), pt(0, 0, 0)) == AlgebraicScalar(0));
  for (long n : {2L, 3L, 4L}) {
    const Rational z = Rational(n * n * n * n) - make_rational(n * n, 2);
    CHECK(cc_distance(l1(), pt(n, n, z)) == AlgebraicScalar(4 * n * n - 2 * n));
  }
}

TEST_CASE("ball membership") {
  CHECK(ball_compare(l1(), pt(4, 0, 3), 5) == BallRelation::Outside);
  CHECK(ball_compare(l1(), pt(4, 0, 3), make_rational(11, 2)) == BallRelation::OnSphere);
  CHECK(ball_compare(l1(), pt(4, 0, 3), 6) == BallRelation::Inside);
  CHECK(ball_compare(l1(), pt(2, 2, 2), 4) == BallRelation::OnSphere);
  CHECK(ball_compare(l1(), pt(0, 0, 3), 7) == BallRelation::Inside);
  CHECK(ball_compare(l1(), pt(0, 0, 3), 6) == BallRelation::Outside);
}

TEST_CASE("dilation") {
  const CCPoint p = pt(3, -1, make_rational(5, 4));
  const Rational t = make_rational(7, 3);
  CHECK(cc_distance(l1(), dilate(p, t)) == AlgebraicScalar(t) * cc_distance(l1(), p));
}

TEST_CASE("geodesic families") {
  const GeodesicFamily f = geodesics(l1(), pt(4, 0, 3));
  CHECK(f.kind == GeodesicKind::UniqueTrace);
  CHECK(f.scale == AlgebraicScalar(make_rational(11, 2)));
  REQUIRE(f.representative);
  REQUIRE(f.representative->segments.size() == 3);
  CHECK(f.representative->segments[0].direction == Vec2(0, -1));
  CHECK(f.representative->segments[0].length == make_rational(3, 22));
  CHECK(f.representative->segments[1].length == make_rational(8, 11));
  CHECK(f.representative->segments[2].length == make_rational(3, 22));
  CHECK(lift_reaches(f, pt(4, 0, 3)));

  const GeodesicFamily b = geodesics(l1(), pt(2, 2, 1));
  CHECK(b.kind == GeodesicKind::BeelineFamily);
  REQUIRE(b.area_range);
  CHECK(b.area_range->first == make_rational(-1, 8));
  CHECK(b.area_range->second == make_rational(1, 8));
  CHECK(lift_reaches(b, pt(2, 2, 1)));
  CHECK(geodesics(l1(), pt(2, 2, 2)).kind == GeodesicKind::BeelineFamily);

  CHECK(geodesics(l1(), pt(0, 0, 1)).kind == GeodesicKind::TraceSegmentFamily);
  CHECK(geodesics(l1(), pt(5, 0, 0)).kind == GeodesicKind::VertexRay);

  const CCPoint down = pt(0, 0, -3);
  const GeodesicFamily d = geodesics(l1(), down);
  CHECK(d.kind == GeodesicKind::TraceSegmentFamily);
  CHECK(lift_reaches(d, down));
}

TEST_CASE("uniqueness") {
  CHECK(is_cc_unique(l1(), pt(4, 0, 3)));
  CHECK_FALSE(is_cc_unique(l1(), pt(2, 2, 1)));
  CHECK(is_cc_unique(l1(), pt(5, 0, 0)));
}

TEST_CASE("symmetries and monotonicity") {
  const CCPoint p = pt(3, 1, make_rational(7, 4));
  const AlgebraicScalar d = cc_distance(l1(), p);
  CHECK(cc_distance(l1(), {-p.x, -p.y, -p.z}) == d);
  CHECK(cc_distance(l1(), {p.x, p.y, -p.z}) == d);
  AlgebraicScalar prev(0);
  for (int m = 0; m < 40; ++m) {
    const AlgebraicScalar cur = cc_distance(l1(), pt(3, 1, make_rational(m, 3)));
    CHECK(prev <= cur);
    prev = cur;
  }
}

}
