#pragma once

#include <span>
#include <vector>

#include "heiscc/exact.hpp"

namespace heiscc {

/// Strictly convex, centrally symmetric polygon with rational vertices.
///
/// Vertices are stored counterclockwise starting from the canonical vertex:
/// among vertices with polar angle in (-pi/2, pi/2], the one closest in
/// angle to the positive x-axis, ties broken toward positive angle. Two
/// polygons are equal iff their vertex lists are equal.
class ConvexPolygon {
 public:
  /// Validates and canonicalizes; throws InvalidInput on a list that is not
  /// a strictly convex, centrally symmetric polygon (either orientation).
  static ConvexPolygon from_vertices(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// N for a 2N-gon.
  std::size_t half_size() const { return vertices_.size() / 2; }
  /// Cyclic, 0-based.
  const Vec2& vertex(std::ptrdiff_t k) const;
  /// Outward facet functionals: facets()[k] . v = 1 on the edge vertex(k) -> vertex(k+1).
  const std::vector<Vec2>& facets() const { return facets_; }
  Rational area() const { return shoelace_area(vertices_); }

  friend bool operator==(const ConvexPolygon& a, const ConvexPolygon& b) { return a.vertices_ == b.vertices_; }

 private:
  ConvexPolygon() = default;

  std::vector<Vec2> vertices_;
  std::vector<Vec2> facets_;
};

/// Canonical convex hull of `points` (or of +-points when `symmetrize`).
/// Interior and collinear boundary points are dropped.
ConvexPolygon symmetric_hull(std::span<const Vec2> points, bool symmetrize = false);

ConvexPolygon polar_dual(const ConvexPolygon& p);

/// Minkowski gauge: min{t >= 0 : v in t*p}.
Rational gauge_norm(const ConvexPolygon& p, const Vec2& v);

/// Index (0-based) of a facet attaining the gauge of v.
std::size_t gauge_facet(const ConvexPolygon& p, const Vec2& v);

/// Exact point-in-convex-polygon (closed) for vertices listed CCW.
bool contains_ccw(std::span<const Vec2> ccw_vertices, const Vec2& p);

}  // namespace heiscc
