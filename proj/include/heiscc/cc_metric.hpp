#pragma once

// Exact CC distance, ball membership and geodesic classification for the
// polygonal CC metric of an atlas. Points use exponential coordinates
// (x, y, z) with the group law z'' = z + z' + (x y' - y x') / 2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heiscc/atlas.hpp"

namespace heiscc {

struct CCPoint {
  Rational x{0}, y{0}, z{0};

  Vec2 footprint() const { return {x, y}; }
  friend bool operator==(const CCPoint&, const CCPoint&) = default;
};

/// delta_t(x, y, z) = (t x, t y, t^2 z).
CCPoint dilate(const CCPoint& p, const Rational& t);

/// The unique t >= 0 with delta_{1/t}(p) on the unit sphere.
AlgebraicScalar cc_distance(const PanelAtlas& atlas, const CCPoint& p);

enum class BallRelation { Inside, OnSphere, Outside };
std::string to_string(BallRelation r);

/// d_CC(p) against r, by rational height comparison only.
BallRelation ball_compare(const PanelAtlas& atlas, const CCPoint& p, const Rational& r);

enum class GeodesicKind { UniqueTrace, TraceSegmentFamily, BeelineFamily, VertexRay };
std::string to_string(GeodesicKind k);

struct GeodesicFamily {
  GeodesicKind kind = GeodesicKind::UniqueTrace;
  /// Representative geodesic at full scale: segment directions (unit L-norm)
  /// and lengths, which are exact multiples of `scale` and may be irrational.
  std::vector<Vec2> directions;
  std::vector<AlgebraicScalar> lengths;
  AlgebraicScalar scale;
  /// The same path on the unit sphere, when `scale` is rational.
  std::optional<PathShape> representative;
  /// Beeline families: attainable balayage on the unit sphere, [-A, A].
  std::optional<std::pair<Rational, Rational>> area_range;
  std::optional<QuadId> quad;  ///< regular part
  std::optional<int> side;     ///< beeline families: edge v_k -> v_{k+1}
};

GeodesicFamily geodesics(const PanelAtlas& atlas, const CCPoint& p);

/// Exact check that the admissible lift of the family representative ends at p.
bool lift_reaches(const GeodesicFamily& family, const CCPoint& p);

bool is_cc_unique(const PanelAtlas& atlas, const CCPoint& p);

}  // namespace heiscc
