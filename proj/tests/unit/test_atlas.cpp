#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "heiscc/atlas.hpp"
#include "heiscc/errors.hpp"
#include "heiscc/lattice.hpp"

using namespace heiscc;

namespace {

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

const PanelAtlas& hex() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true).L);
  return a;
}

// Strictly convex symmetric integer 2N-gon from N edge vectors with
// increasing angle in [0, pi).
ConvexPolygon random_polygon(std::mt19937_64& rng, int N) {
  std::uniform_int_distribution<int> d(-6, 6);
  std::vector<Vec2> edges;
  while (static_cast<int>(edges.size()) < N) {
    Vec2 e(d(rng), d(rng));
    if (e.y < 0 || (e.y == 0 && e.x <= 0)) continue;
    bool parallel = false;
    for (const auto& f : edges) parallel = parallel || cross(e, f) == 0;
    if (!parallel) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end(), [](const Vec2& a, const Vec2& b) { return cross(a, b) > 0; });
  Vec2 sum;
  for (const auto& e : edges) sum = sum + e;
  std::vector<Vec2> verts{Rational(-1) * sum};
  for (const auto& e : edges) verts.push_back(verts.back() + Rational(2) * e);
  verts.pop_back();
  for (int k = 0; k < N; ++k) verts.push_back(-verts[static_cast<std::size_t>(k)]);
  return ConvexPolygon::from_vertices(verts);
}

}  // namespace

TEST_SUITE("isoperimetrix_atlas") {

TEST_CASE("isoperimetrix of the square") {
  const Isoperimetrix& iso = l1().iso();
  CHECK(iso.polygon == ConvexPolygon::from_vertices({Vec2(make_rational(1, 8), make_rational(-1, 8)), Vec2(make_rational(1, 8), make_rational(1, 8)),
                                                     Vec2(make_rational(-1, 8), make_rational(1, 8)), Vec2(make_rational(-1, 8), make_rational(-1, 8))}));
  for (int i = 1; i <= 4; ++i) CHECK(l1().ell(i) == make_rational(1, 4));
}

TEST_CASE("isoperimetrix of the hexagon has perimeter one") {
  CHECK(hex().iso().polygon.size() == 6);
  Rational total = 0;
  for (int i = 1; i <= 6; ++i) total += hex().ell(i);
  CHECK(total == 1);
}

TEST_CASE("quad counts") {
  CHECK(l1().quads().size() == 8);
  CHECK(hex().quads().size() == 24);
  std::mt19937_64 rng(7);
  for (int N = 2; N <= 6; ++N) {
    for (int rep = 0; rep < 3; ++rep) {
      const PanelAtlas a = PanelAtlas::build(random_polygon(rng, N));
      CHECK(a.quads().size() == static_cast<std::size_t>(4 * N * N - 4 * N));
    }
  }
}

TEST_CASE("balayage values on the square") {
  CHECK(balayage(l1(), Vec2(0, 0)).value == make_rational(1, 16));
  CHECK(balayage(l1(), Vec2(1, 0)).value == 0);
  CHECK(balayage(l1(), Vec2(make_rational(1, 2), make_rational(1, 2))).value == make_rational(1, 8));
  CHECK(l1().a_max() == make_rational(1, 8));
  CHECK_THROWS_AS(balayage(l1(), Vec2(1, 1)), OutsideQ);
}

TEST_CASE("trace shapes") {
  const PathShape half = trace_shape(l1(), Vec2(make_rational(1, 2), make_rational(1, 2)));
  CHECK(half.balayage == make_rational(1, 8));
  REQUIRE(half.segments.size() == 2);
  CHECK(half.segments[0].direction == Vec2(1, 0));
  CHECK(half.segments[1].direction == Vec2(0, 1));

  const PathShape loop = trace_shape(l1(), Vec2(0, 0));
  CHECK(loop.balayage == make_rational(1, 16));
  CHECK(loop.segments.size() == 4);
  for (const auto& s : loop.segments) CHECK(s.length == make_rational(1, 4));

  const PathShape three = trace_shape(l1(), Vec2(make_rational(2, 3), 0));
  REQUIRE(three.segments.size() == 3);
  CHECK(three.segments[0].direction == Vec2(0, -1));
  CHECK(three.segments[1].direction == Vec2(1, 0));
  CHECK(three.segments[2].direction == Vec2(0, 1));
  CHECK(three.total == 1);
  CHECK(three.balayage == balayage(l1(), Vec2(make_rational(2, 3), 0)).value);
}

TEST_CASE("heights") {
  CHECK(height(l1(), 4, Vec2(0, 0)) == 1);
  CHECK(height(l1(), 1, Vec2(1, 0)) == 0);
  CHECK(height(l1(), 16, Vec2(4, 4)) == 256 * balayage(l1(), Vec2(make_rational(1, 4), make_rational(1, 4))).value);
}

TEST_CASE("nonuniqueness locus") {
  CHECK(in_nonuniqueness_locus(l1(), Vec2(make_rational(-1, 4), 0)));
  CHECK_FALSE(in_nonuniqueness_locus(l1(), Vec2(1, 0)));
  CHECK(in_nonuniqueness_locus(l1(), Vec2(make_rational(1, 2), make_rational(1, 2))));
  CHECK_FALSE(in_nonuniqueness_locus(l1(), Vec2(make_rational(2, 3), 0)));
}

TEST_CASE("sphere meshes") {
  const TriangleMesh m = sphere_mesh(l1(), 1);
  std::size_t regular = 0, sides = 0;
  for (const auto& g : m.groups) {
    if (g.name.rfind("panel_", 0) == 0) ++regular;
    if (g.name.rfind("side_", 0) == 0) ++sides;
  }
  CHECK(regular == 16);
  CHECK(sides == 4);

  const TriangleMesh h = sphere_mesh(hex(), 2);
  std::size_t pos = 0;
  for (const auto& g : h.groups) pos += g.name.find("_pos") != std::string::npos ? 1 : 0;
  CHECK(pos == 24);

  std::set<std::tuple<Rational, Rational, Rational>> verts, flipped;
  for (const auto& v : h.vertices) {
    verts.emplace(v.x, v.y, v.z);
    flipped.emplace(v.x, v.y, -v.z);
  }
  CHECK(verts == flipped);
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(GenSet::make({{2, 0, 0}, {1, 0, 0}}, true), DegenerateHull);
}

}
