#include "heiscc/volumes.hpp"

#include <algorithm>
#include <optional>

#include "heiscc/errors.hpp"

namespace heiscc {

namespace {

// Edge-midpoint rule: exact for polynomials of degree <= 2.
Rational integrate_triangle(const Quadratic2& q, const Vec2& a, const Vec2& b, const Vec2& c) {
  const Rational signed_area = cross(b - a, c - a) / 2;
  if (signed_area == 0) return 0;
  const Rational half(1, 2);
  return signed_area / 3 * (q(half * (a + b)) + q(half * (b + c)) + q(half * (c + a)));
}

// The linear part of the cone-volume integrand, 1/4 (b1 x + b2 y + 2c).
Quadratic2 cone_integrand(const Quadratic2& a) { return {0, 0, 0, a.b1 / 4, a.b2 / 4, a.c / 2}; }

// c * p * q with (X, Y) = p * from + q * to.
Quadratic2 side_integrand(const SidePanel& s) {
  const Rational& c = s.cross;
  const AffineForm p{s.to.y / c, -s.to.x / c, 0};
  const AffineForm q{-s.from.y / c, s.from.x / c, 0};
  return c * product(p, q);
}

// Part of segment [a, b] inside a convex CCW polygon, if it has positive length.
std::optional<std::pair<Vec2, Vec2>> clip_segment(const Vec2& a, const Vec2& b, std::span<const Vec2> ccw) {
  Rational lo = 0, hi = 1;
  const Vec2 d = b - a;
  const std::size_t n = ccw.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& u = ccw[k];
    const Vec2 e = ccw[(k + 1) % n] - u;
    // cross(e, a + t d - u) >= 0
    const Rational base = cross(e, a - u);
    const Rational slope = cross(e, d);
    if (slope == 0) {
      if (sgn(base) < 0) return std::nullopt;
      continue;
    }
    const Rational t = -base / slope;
    if (sgn(slope) > 0)
      lo = std::max(lo, t);
    else
      hi = std::min(hi, t);
    if (lo >= hi) return std::nullopt;
  }
  return std::pair{a + lo * d, a + hi * d};
}

}  // namespace

Rational integrate_quadratic_over_polygon(const Quadratic2& q, std::span<const Vec2> polygon) {
  if (polygon.size() < 3) return 0;
  Rational total = 0;
  for (std::size_t k = 1; k + 1 < polygon.size(); ++k) total += integrate_triangle(q, polygon[0], polygon[k], polygon[k + 1]);
  return sgn(shoelace_area(polygon)) < 0 ? Rational(-total) : total;
}

Rational panel_cone_volume(const PanelAtlas& atlas, std::size_t quad_index) {
  const Quad& quad = atlas.quads().at(quad_index);
  return integrate_quadratic_over_polygon(cone_integrand(quad.poly), quad.vertices);
}

Rational side_panel_cone_volume(const PanelAtlas& atlas, int k) {
  if (k < 1 || k > static_cast<int>(atlas.sides_count())) throw InvalidInput("side index out of range");
  const SidePanel& s = atlas.sides()[static_cast<std::size_t>(k - 1)];
  const std::array<Vec2, 3> tri{Vec2(), s.from, s.to};
  return integrate_quadratic_over_polygon(side_integrand(s), tri);
}

VolumeReport ball_volumes(const PanelAtlas& atlas) {
  VolumeReport r;
  for (std::size_t q = 0; q < atlas.quads().size(); ++q) {
    const Quad& quad = atlas.quads()[q];
    const Rational v = panel_cone_volume(atlas, q);
    r.per_quad[quad.id] = v;
    r.by_directions[quad.directions] += 2 * v;
    r.V_reg += 2 * v;
  }
  for (const auto& s : atlas.sides()) {
    const Rational v = side_panel_cone_volume(atlas, s.k);
    r.per_side[s.k] = v;
    r.V_uns += v;
  }
  r.V = r.V_reg + r.V_uns;
  r.unique_probability = r.V_reg / r.V;
  return r;
}

std::vector<Vec2> clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clipper) {
  std::vector<Vec2> out(subject.begin(), subject.end());
  const std::size_t n = clipper.size();
  for (std::size_t k = 0; k < n && !out.empty(); ++k) {
    const Vec2& u = clipper[k];
    const Vec2 e = clipper[(k + 1) % n] - u;
    auto side = [&](const Vec2& p) { return cross(e, p - u); };
    std::vector<Vec2> next;
    for (std::size_t m = 0; m < out.size(); ++m) {
      const Vec2& a = out[m];
      const Vec2& b = out[(m + 1) % out.size()];
      const Rational sa = side(a);
      const Rational sb = side(b);
      if (sgn(sa) >= 0) next.push_back(a);
      if ((sgn(sa) < 0 && sgn(sb) > 0) || (sgn(sa) > 0 && sgn(sb) < 0)) next.push_back(a + (sa / (sa - sb)) * (b - a));
    }
    out = std::move(next);
  }
  return out;
}

Rational sector_cone_volume(const PanelAtlas& atlas, std::span<const Vec2> region, SphereParts parts) {
  if (region.size() < 3) return 0;
  for (const auto& p : region) {
    if (gauge_norm(atlas.L(), p) > 1) throw RegionOutsideQ("region vertex " + to_string(p) + " lies outside Q");
  }
  std::vector<Vec2> ccw(region.begin(), region.end());
  const int orient = sgn(shoelace_area(ccw));
  if (orient == 0) return 0;
  if (orient < 0) std::reverse(ccw.begin(), ccw.end());
  for (std::size_t k = 0; k < ccw.size(); ++k) {
    if (sgn(cross(ccw[(k + 1) % ccw.size()] - ccw[k], ccw[(k + 2) % ccw.size()] - ccw[(k + 1) % ccw.size()])) < 0)
      throw InvalidInput("sector region must be convex");
  }

  Rational one_sign = 0;
  if (parts != SphereParts::Sides) {
    for (const auto& quad : atlas.quads()) {
      const auto piece = clip_convex(quad.vertices, ccw);
      one_sign += integrate_quadratic_over_polygon(cone_integrand(quad.poly), piece);
    }
  }
  Rational sides = 0;
  if (parts == SphereParts::Sides || parts == SphereParts::All) {
    for (const auto& s : atlas.sides()) {
      const auto seg = clip_segment(s.from, s.to, ccw);
      if (!seg) continue;
      const std::array<Vec2, 3> tri{Vec2(), seg->first, seg->second};
      sides += integrate_quadratic_over_polygon(side_integrand(s), tri);
    }
  }
  switch (parts) {
    case SphereParts::Positive:
    case SphereParts::Negative: return one_sign;
    case SphereParts::Regular: return 2 * one_sign;
    case SphereParts::Sides: return sides;
    case SphereParts::All: return 2 * one_sign + sides;
  }
  return 0;
}

}  // namespace heiscc
