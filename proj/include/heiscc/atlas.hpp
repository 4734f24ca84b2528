#pragma once

// Isoperimetrix, trace-path quadrilaterals and the piecewise-quadratic
// balayage function of a polygonal norm.
//
// Indexing: L has vertices v_1..v_2N (canonical order). Side i of the
// unit-perimeter isoperimetrix I_1 runs in direction v_i, so the trace path
// of a point in quad (i, j) follows v_i, v_{i+1}, ..., v_j. The quad (i, j)
// is parametrized by (s1, s, s2), the scale factors of the partial first
// side, the full middle sides and the partial last side:
//
//     (x, y) = s1*w_i + s*(w_{i+1} + ... + w_{j-1}) + s2*w_j,
//     s1*l_i + s*(l_{i+1} + ... + l_{j-1}) + s2*l_j = 1,
//
// with w_m = l_m * v_m. Solving gives s1, s, s2 as affine functions of
// (x, y), and the quad itself is {0 <= s1 <= s, 0 <= s2 <= s}.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "heiscc/exact.hpp"
#include "heiscc/polygon.hpp"

namespace heiscc {

struct IsoSide {
  int index = 0;        ///< 1-based; direction == L.vertex(index - 1)
  Vec2 direction;       ///< unit L-norm
  Rational length{0};   ///< L-length l_i
  Rational offset{0};   ///< arclength of the side's start from iota(0), in [0, 1)
  Vec2 start;
  Vec2 end;
};

struct Isoperimetrix {
  ConvexPolygon polygon;  ///< I_1, perimeter one in the L-norm
  std::vector<IsoSide> sides;
  Rational area{0};
};

Isoperimetrix build_isoperimetrix(const ConvexPolygon& L);

struct PathSegment {
  Vec2 direction;
  Rational length{0};
  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

/// Piecewise-linear path from the origin, with its balayage area.
struct PathShape {
  std::vector<PathSegment> segments;
  Rational total{0};
  Vec2 endpoint;
  Rational balayage{0};

  /// Drops zero-length segments and fills total, endpoint and balayage.
  static PathShape from_segments(std::vector<PathSegment> segments);
  std::vector<Vec2> vertices() const;
};

/// normal . p >= offset
struct HalfPlane {
  Vec2 normal;
  Rational offset{0};
};

struct QuadId {
  int i = 0;
  int j = 0;
  friend bool operator==(const QuadId&, const QuadId&) = default;
  friend auto operator<=>(const QuadId&, const QuadId&) = default;
};

struct Quad {
  QuadId id;
  int directions = 0;            ///< segments in the trace path shape (3 or more)
  std::array<Vec2, 4> vertices;  ///< CCW
  std::array<HalfPlane, 4> edges;
  Quadratic2 poly;               ///< balayage function on this quad
  AffineForm s_first, s_middle, s_last;
  Rational max_value{0};         ///< max of poly over the quad

  bool contains(const Vec2& p) const;
  /// p / r in the quad, r > 0.
  bool contains_scaled(const Vec2& p, const Rational& r) const;
  /// p / t in the quad, t > 0 algebraic.
  bool contains_scaled(const Vec2& p, const AlgebraicScalar& t) const;
};

/// The degenerate quad Q_{k,k+1}: the edge v_k -> v_{k+1} of L.
struct SidePanel {
  int k = 0;
  Vec2 from;
  Vec2 to;
  /// cross(v_k, v_{k+1}); A(a*v_k + (1-a)*v_{k+1}) = cross * a * (1 - a) / 2.
  Rational cross{0};
  Rational value_from{0};
  Rational value_to{0};
  Rational peak{0};
};

/// Nondegenerate part of Q_ii: segment from 0 along -v_i.
struct NullSegment {
  int i = 0;
  Vec2 direction;     ///< -v_i
  Rational length{0}; ///< l_i / (1 - l_i)
  Vec2 endpoint;      ///< v_i', excluded from the nonuniqueness locus
};

class PanelAtlas {
 public:
  /// Builds and self-verifies; throws AtlasInconsistency if an exact check fails.
  static PanelAtlas build(const ConvexPolygon& L);

  const ConvexPolygon& L() const { return L_; }
  const Isoperimetrix& iso() const { return iso_; }
  const std::vector<Quad>& quads() const { return quads_; }
  const std::vector<SidePanel>& sides() const { return sides_; }
  const std::vector<NullSegment>& null_segments() const { return null_segments_; }
  const Rational& a_max() const { return a_max_; }
  std::size_t sides_count() const { return L_.size(); }

  /// Direction v_i, 1-based cyclic.
  const Vec2& v(int i) const;
  const Rational& ell(int i) const;

  /// Lowest (i, j) quad containing p, if any.
  std::optional<std::size_t> locate(const Vec2& p) const;
  /// Lowest quad containing p / r (r > 0).
  std::optional<std::size_t> locate_scaled(const Vec2& p, const Rational& r) const;

 private:
  PanelAtlas(ConvexPolygon L, Isoperimetrix iso) : L_(std::move(L)), iso_(std::move(iso)) {}

  ConvexPolygon L_;
  Isoperimetrix iso_;
  std::vector<Quad> quads_;
  std::vector<SidePanel> sides_;
  std::vector<NullSegment> null_segments_;
  Rational a_max_{0};
};

/// n^2 * q(x/n, y/n), expanded so that n may be zero or algebraic-free.
Rational homogenized(const Quadratic2& q, const Vec2& p, const Rational& n);

struct BalayageValue {
  Rational value;
  QuadId quad;
  std::size_t quad_index = 0;
};

BalayageValue balayage(const PanelAtlas& atlas, const Vec2& p);

/// Positively oriented trace path to p.
PathShape trace_shape(const PanelAtlas& atlas, const Vec2& p);
/// Trace path with the given quad's combinatorics (p must lie in it).
PathShape trace_shape_in_quad(const PanelAtlas& atlas, std::size_t quad_index, const Vec2& p);

/// Height of the radius-n CC sphere over p: n^2 * A(p / n).
Rational height(const PanelAtlas& atlas, const Rational& n, const Vec2& p);

bool in_nonuniqueness_locus(const PanelAtlas& atlas, const Vec2& p);

/// Exact; rounded to double only when written out.
struct MeshVertex {
  Rational x, y, z;
  friend bool operator==(const MeshVertex&, const MeshVertex&) = default;
};

struct MeshGroup {
  std::string name;
  std::vector<std::array<std::size_t, 3>> faces;  ///< 0-based vertex ids
};

struct TriangleMesh {
  std::vector<MeshVertex> vertices;
  std::vector<MeshGroup> groups;
};

/// Triangulated unit sphere: +-graph(A) over each quad plus the side panels.
TriangleMesh sphere_mesh(const PanelAtlas& atlas, int subdivisions);

}  // namespace heiscc
