#pragma once

// Exact volumes of dilation cones over parts of the unit sphere.
//
// The cone over the panel {(x, y, A(x, y)) : (x, y) in Q_ij} is the image of
// (s, x, y) -> (s x, s y, s^2 A(x, y)), 0 <= s <= 1, whose Jacobian is
// s^3 (2A - x A_x - y A_y). Integrating out s leaves
//
//     vol = 1/4 * integral over Q_ij of (2A - x A_x - y A_y)
//         = 1/4 * integral over Q_ij of (b1 x + b2 y + 2c),
//
// since the homogeneous quadratic part of A drops out. The cone over side
// panel k fills the footprint triangle (0, v_k, v_{k+1}); writing a point as
// p v_k + q v_{k+1}, its height range is |z| <= cross * p * q / 2.

#include <map>
#include <vector>

#include "heiscc/atlas.hpp"

namespace heiscc {

/// Exact integral of q over a simple polygon (orientation-independent).
Rational integrate_quadratic_over_polygon(const Quadratic2& q, std::span<const Vec2> polygon);

/// Cone volume over one sign of quad panel `quad_index`.
Rational panel_cone_volume(const PanelAtlas& atlas, std::size_t quad_index);

/// Cone volume over side panel k (1-based), both signs.
Rational side_panel_cone_volume(const PanelAtlas& atlas, int k);

struct VolumeReport {
  Rational V{0};
  Rational V_reg{0};
  Rational V_uns{0};
  std::map<QuadId, Rational> per_quad;    ///< one sign
  std::map<int, Rational> per_side;       ///< both signs
  std::map<int, Rational> by_directions;  ///< both signs, keyed by trace-path segment count
  Rational unique_probability{0};         ///< V_reg / V
};

VolumeReport ball_volumes(const PanelAtlas& atlas);

enum class SphereParts { Positive, Negative, Regular, Sides, All };

/// Cone volume of the sphere part over a convex footprint region inside Q.
Rational sector_cone_volume(const PanelAtlas& atlas, std::span<const Vec2> region, SphereParts parts = SphereParts::All);

/// Sutherland-Hodgman clip of a polygon by a convex CCW polygon.
std::vector<Vec2> clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clipper);

}  // namespace heiscc
