#include "heiscc/cc_metric.hpp"

#include <algorithm>

#include "heiscc/errors.hpp"

namespace heiscc {

namespace {

struct Resolved {
  AlgebraicScalar d;
  bool unstable = false;
  std::optional<std::size_t> quad;  ///< lowest quad whose candidate survived
};

std::string describe(const CCPoint& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ", " + to_string(p.z) + ")";
}

Resolved resolve(const PanelAtlas& atlas, const CCPoint& p) {
  const Vec2 xy = p.footprint();
  const Rational z = abs(p.z);
  const Rational g = gauge_norm(atlas.L(), xy);
  if (g == 0 && z == 0) return {AlgebraicScalar(0), false, std::nullopt};

  std::vector<AlgebraicScalar> candidates;
  Resolved out;
  if (sgn(g) > 0 && z <= height(atlas, g, xy)) {
    candidates.emplace_back(g);
    out.unstable = true;
  }
  const auto& quads = atlas.quads();
  for (std::size_t k = 0; k < quads.size(); ++k) {
    const Quadratic2& f = quads[k].poly;
    const Rational quad_part = f.a1 * xy.x * xy.x + f.a2 * xy.x * xy.y + f.a3 * xy.y * xy.y;
    const Rational lin = f.b1 * xy.x + f.b2 * xy.y;
    for (const auto& t : solve_quadratic_positive(f.c, lin, quad_part - z)) {
      if (!quads[k].contains_scaled(xy, t)) continue;
      candidates.push_back(t);
      if (!out.quad) out.quad = k;
    }
  }
  if (candidates.empty()) throw ConsistencyError("no distance candidate for " + describe(p));
  for (const auto& c : candidates) {
    if (!(c == candidates.front())) {
      throw ConsistencyError("distance candidates " + candidates.front().to_string() + " and " + c.to_string() +
                             " disagree for " + describe(p));
    }
  }
  out.d = candidates.front();
  // Prefer the rational representation when several radicand forms coincide.
  for (const auto& c : candidates) {
    if (c.is_rational()) out.d = c;
  }
  return out;
}

// Footprint in the open N_0 segments (including the origin), footprint = xy / d.
bool foot_in_null_segments(const PanelAtlas& atlas, const Vec2& xy, const AlgebraicScalar& d) {
  if (xy == Vec2()) return true;
  for (const auto& seg : atlas.null_segments()) {
    if (cross(seg.direction, xy) != 0 || sgn(dot(seg.direction, xy)) <= 0) continue;
    const Rational mu = seg.direction.x != 0 ? Rational(xy.x / seg.direction.x) : Rational(xy.y / seg.direction.y);
    if (AlgebraicScalar(mu) < AlgebraicScalar(seg.length) * d) return true;
  }
  return false;
}

void reverse_path(GeodesicFamily& f) {
  std::reverse(f.directions.begin(), f.directions.end());
  std::reverse(f.lengths.begin(), f.lengths.end());
  if (f.representative) {
    std::reverse(f.representative->segments.begin(), f.representative->segments.end());
    *f.representative = PathShape::from_segments(f.representative->segments);
  }
}

void set_from_shape(GeodesicFamily& f, const PathShape& unit, const Rational& d) {
  for (const auto& s : unit.segments) {
    f.directions.push_back(s.direction);
    f.lengths.emplace_back(s.length * d);
  }
  f.representative = unit;
}

}  // namespace

CCPoint dilate(const CCPoint& p, const Rational& t) { return {t * p.x, t * p.y, t * t * p.z}; }

AlgebraicScalar cc_distance(const PanelAtlas& atlas, const CCPoint& p) { return resolve(atlas, p).d; }

std::string to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Inside: return "Inside";
    case BallRelation::OnSphere: return "OnSphere";
    case BallRelation::Outside: return "Outside";
  }
  return "?";
}

BallRelation ball_compare(const PanelAtlas& atlas, const CCPoint& p, const Rational& r) {
  if (sgn(r) < 0) throw InvalidInput("negative radius");
  const Vec2 xy = p.footprint();
  const Rational g = gauge_norm(atlas.L(), xy);
  if (g > r) return BallRelation::Outside;
  const Rational h = height(atlas, r, xy);
  const Rational z = abs(p.z);
  if (z > h) return BallRelation::Outside;
  if (g == r || z == h) return BallRelation::OnSphere;
  return BallRelation::Inside;
}

std::string to_string(GeodesicKind k) {
  switch (k) {
    case GeodesicKind::UniqueTrace: return "UniqueTrace";
    case GeodesicKind::TraceSegmentFamily: return "TraceSegmentFamily";
    case GeodesicKind::BeelineFamily: return "BeelineFamily";
    case GeodesicKind::VertexRay: return "VertexRay";
  }
  return "?";
}

GeodesicFamily geodesics(const PanelAtlas& atlas, const CCPoint& p) {
  const Vec2 xy = p.footprint();
  if (xy == Vec2() && p.z == 0) throw InvalidInput("geodesics from the origin to itself");
  const Resolved r = resolve(atlas, p);
  GeodesicFamily f;
  f.scale = r.d;

  if (r.unstable) {
    const Rational d = r.d.p();
    const Vec2 foot = xy / d;
    const auto& verts = atlas.L().vertices();
    const auto vit = std::find(verts.begin(), verts.end(), foot);
    if (vit != verts.end()) {
      f.kind = GeodesicKind::VertexRay;
      set_from_shape(f, PathShape::from_segments({{foot, Rational(1)}}), d);
      return f;
    }
    const SidePanel& side = atlas.sides()[gauge_facet(atlas.L(), foot)];
    f.kind = GeodesicKind::BeelineFamily;
    f.side = side.k;
    // foot = a*from + (1 - a)*to
    const Vec2 e = side.from - side.to;
    const Vec2 rel = foot - side.to;
    const Rational a = e.x != 0 ? Rational(rel.x / e.x) : Rational(rel.y / e.y);
    const Rational peak_here = side.cross * a * (1 - a) / 2;
    f.area_range = {-peak_here, peak_here};
    // s along from, (1 - a) along to, (a - s) along from: area (1-a)*cross*(2s - a)/2.
    const Rational zeta = p.z / (d * d);
    const Rational s = (2 * zeta / ((1 - a) * side.cross) + a) / 2;
    set_from_shape(f, PathShape::from_segments({{side.from, s}, {side.to, 1 - a}, {side.from, a - s}}), d);
    return f;
  }

  if (!r.quad) throw ConsistencyError("stable point without a quad");
  const Quad& quad = atlas.quads()[*r.quad];
  f.quad = quad.id;
  f.kind = foot_in_null_segments(atlas, xy, r.d) ? GeodesicKind::TraceSegmentFamily : GeodesicKind::UniqueTrace;
  if (r.d.is_rational()) {
    set_from_shape(f, trace_shape_in_quad(atlas, *r.quad, xy / r.d.p()), r.d.p());
  } else {
    // Segment lengths at full scale: l_m * (cx x + cy y + c0 d).
    const int n = static_cast<int>(atlas.sides_count());
    auto full = [&](const AffineForm& s) { return AlgebraicScalar(s.cx * xy.x + s.cy * xy.y) + AlgebraicScalar(s.c0) * r.d; };
    auto push = [&](int idx, const AffineForm& s) {
      const int m = (idx - 1) % n + 1;
      AlgebraicScalar len = AlgebraicScalar(atlas.ell(m)) * full(s);
      if (len.sign() == 0) return;
      f.directions.push_back(atlas.v(m));
      f.lengths.push_back(std::move(len));
    };
    push(quad.id.i, quad.s_first);
    for (int m = quad.id.i + 1; m < quad.id.i + quad.directions - 1; ++m) push(m, quad.s_middle);
    push(quad.id.j, quad.s_last);
  }
  if (sgn(p.z) < 0) reverse_path(f);
  return f;
}

bool lift_reaches(const GeodesicFamily& family, const CCPoint& p) {
  AlgebraicScalar x(0), y(0), twice_area(0);
  for (std::size_t k = 0; k < family.directions.size(); ++k) {
    const AlgebraicScalar nx = x + AlgebraicScalar(family.directions[k].x) * family.lengths[k];
    const AlgebraicScalar ny = y + AlgebraicScalar(family.directions[k].y) * family.lengths[k];
    twice_area = twice_area + (x * ny - y * nx);
    x = nx;
    y = ny;
  }
  // The closing chord from the endpoint back to the origin adds nothing.
  return x == AlgebraicScalar(p.x) && y == AlgebraicScalar(p.y) && twice_area == AlgebraicScalar(2 * p.z);
}

bool is_cc_unique(const PanelAtlas& atlas, const CCPoint& p) {
  const GeodesicKind k = geodesics(atlas, p).kind;
  return k == GeodesicKind::UniqueTrace || k == GeodesicKind::VertexRay;
}

}  // namespace heiscc
