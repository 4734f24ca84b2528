#include "heiscc/polygon.hpp"

#include <algorithm>

#include "heiscc/errors.hpp"

namespace heiscc {

namespace {

// Angle in (-pi/2, pi/2]: x > 0, or x == 0 and y > 0.
bool in_right_half(const Vec2& v) { return sgn(v.x) > 0 || (v.x == 0 && sgn(v.y) > 0); }

// Is a strictly closer in angle to the positive x-axis than b?
// Both in the right half-plane. Compares |y|/x, with x = 0 as infinity.
int compare_axis_distance(const Vec2& a, const Vec2& b) {
  if (a.x == 0 && b.x == 0) return 0;
  if (a.x == 0) return 1;
  if (b.x == 0) return -1;
  return cmp(Rational(abs(a.y) * b.x), Rational(abs(b.y) * a.x));
}

std::size_t canonical_start(const std::vector<Vec2>& ccw) {
  std::size_t best = ccw.size();
  for (std::size_t k = 0; k < ccw.size(); ++k) {
    if (!in_right_half(ccw[k])) continue;
    if (best == ccw.size()) {
      best = k;
      continue;
    }
    const int c = compare_axis_distance(ccw[k], ccw[best]);
    if (c < 0 || (c == 0 && sgn(ccw[k].y) > 0)) best = k;
  }
  return best;
}

// Andrew's monotone chain; drops collinear points; returns CCW.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    const int c = cmp(a.x, b.x);
    return c != 0 ? c < 0 : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sgn(cross(hull[k - 1] - hull[k - 2], p - hull[k - 2])) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = pts[i];
    while (k >= lower && sgn(cross(hull[k - 1] - hull[k - 2], p - hull[k - 2])) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 4 || n % 2 != 0) throw InvalidInput("centrally symmetric polygon needs an even number >= 4 of vertices");
  if (sgn(shoelace_area(vertices)) < 0) std::reverse(vertices.begin(), vertices.end());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = vertices[k];
    const Vec2& b = vertices[(k + 1) % n];
    const Vec2& c = vertices[(k + 2) % n];
    if (sgn(cross(b - a, c - b)) <= 0) throw InvalidInput("polygon is not strictly convex");
  }
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    if (!(vertices[k + half] == -vertices[k])) throw InvalidInput("polygon is not centrally symmetric");
  }
  const std::size_t start = canonical_start(vertices);
  std::rotate(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(start), vertices.end());

  ConvexPolygon poly;
  poly.vertices_ = std::move(vertices);
  poly.facets_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& u = poly.vertices_[k];
    const Vec2& v = poly.vertices_[(k + 1) % n];
    // a . u = a . v = 1
    const Rational det = cross(u, v);
    poly.facets_.push_back(Vec2((v.y - u.y) / det, (u.x - v.x) / det));
  }
  return poly;
}

const Vec2& ConvexPolygon::vertex(std::ptrdiff_t k) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((k % n) + n) % n)];
}

ConvexPolygon symmetric_hull(std::span<const Vec2> points, bool symmetrize) {
  if (points.empty()) throw InvalidInput("symmetric_hull needs at least one point");
  std::vector<Vec2> pts(points.begin(), points.end());
  bool spans = false;
  for (const auto& p : points) {
    for (const auto& q : points) spans = spans || cross(p, q) != 0;
  }
  if (!spans) throw DegenerateHull("generator projections lie on a line through the origin");
  if (symmetrize) {
    for (const auto& p : points) pts.push_back(-p);
  } else {
    for (const auto& p : points) {
      if (std::find(points.begin(), points.end(), -p) == points.end())
        throw InvalidInput("point set is not closed under negation: " + to_string(p));
    }
  }
  std::vector<Vec2> hull = convex_hull(std::move(pts));
  if (hull.size() < 3) throw DegenerateHull("generator projections lie on a line through the origin");
  return ConvexPolygon::from_vertices(std::move(hull));
}

ConvexPolygon polar_dual(const ConvexPolygon& p) { return ConvexPolygon::from_vertices(p.facets()); }

Rational gauge_norm(const ConvexPolygon& p, const Vec2& v) { return dot(p.facets()[gauge_facet(p, v)], v); }

std::size_t gauge_facet(const ConvexPolygon& p, const Vec2& v) {
  const auto& f = p.facets();
  std::size_t best = 0;
  Rational best_val = dot(f[0], v);
  for (std::size_t k = 1; k < f.size(); ++k) {
    Rational val = dot(f[k], v);
    if (val > best_val) {
      best_val = std::move(val);
      best = k;
    }
  }
  return best;
}

bool contains_ccw(std::span<const Vec2> ccw_vertices, const Vec2& p) {
  const std::size_t n = ccw_vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = ccw_vertices[k];
    const Vec2& b = ccw_vertices[(k + 1) % n];
    if (sgn(cross(b - a, p - a)) < 0) return false;
  }
  return true;
}

}  // namespace heiscc
