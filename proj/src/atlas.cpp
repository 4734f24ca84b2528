#include "heiscc/atlas.hpp"

#include <algorithm>

#include "heiscc/errors.hpp"

namespace heiscc {

namespace {

// Rotation by -pi/2. Maps the vertex of Q* dual to edge (v_k, v_{k+1}) to the
// vertex of the isoperimetrix between the sides parallel to v_k and v_{k+1}.
Vec2 rotate_cw(const Vec2& a) { return {a.y, -a.x}; }

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

std::optional<Matrix3> invert(Matrix3 m) {
  Matrix3 inv{};
  for (int r = 0; r < 3; ++r) inv[r][r] = 1;
  for (int col = 0; col < 3; ++col) {
    int pivot = -1;
    for (int r = col; r < 3; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Rational p = m[col][col];
    for (int c = 0; c < 3; ++c) {
      m[col][c] /= p;
      inv[col][c] /= p;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = 0; c < 3; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

struct AffineVec {
  AffineForm x, y;
};

Quadratic2 affine_cross(const AffineVec& a, const AffineVec& b) { return product(a.x, b.y) - product(a.y, b.x); }

HalfPlane edge_half_plane(const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  return {Vec2(-e.y, e.x), cross(e, a)};
}

// max of a quadratic over a convex polygon: vertices, edge-interior
// critical points and the interior critical point.
Rational max_over_convex(const Quadratic2& f, std::span<const Vec2> ccw) {
  Rational best = f(ccw[0]);
  auto consider = [&](const Vec2& p) {
    Rational v = f(p);
    if (v > best) best = std::move(v);
  };
  const std::size_t n = ccw.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = ccw[k];
    const Vec2 e = ccw[(k + 1) % n] - a;
    consider(a);
    // f(a + tau e) = qa tau^2 + qb tau + const
    const Rational qa = f.a1 * e.x * e.x + f.a2 * e.x * e.y + f.a3 * e.y * e.y;
    const Rational qb = 2 * f.a1 * a.x * e.x + f.a2 * (a.x * e.y + a.y * e.x) + 2 * f.a3 * a.y * e.y + f.b1 * e.x + f.b2 * e.y;
    if (sgn(qa) < 0) {
      const Rational tau = -qb / (2 * qa);
      if (sgn(tau) > 0 && tau < 1) consider(a + tau * e);
    }
  }
  // grad = 0: [2a1 a2; a2 2a3] p = -(b1, b2)
  const Rational det = 4 * f.a1 * f.a3 - f.a2 * f.a2;
  if (det != 0) {
    const Vec2 p((-f.b1 * 2 * f.a3 + f.a2 * f.b2) / det, (-2 * f.a1 * f.b2 + f.a2 * f.b1) / det);
    if (contains_ccw(ccw, p)) consider(p);
  }
  return best;
}

}  // namespace

// --- PathShape -------------------------------------------------------------

PathShape PathShape::from_segments(std::vector<PathSegment> segments) {
  PathShape shape;
  for (auto& s : segments) {
    if (sgn(s.length) < 0) throw InvalidInput("negative path segment length");
    if (s.length == 0) continue;
    shape.segments.push_back(std::move(s));
  }
  std::vector<Vec2> pts = shape.vertices();
  for (const auto& s : shape.segments) shape.total += s.length;
  shape.endpoint = pts.back();
  shape.balayage = shoelace_area(pts);
  return shape;
}

std::vector<Vec2> PathShape::vertices() const {
  std::vector<Vec2> pts{Vec2()};
  for (const auto& s : segments) pts.push_back(pts.back() + s.length * s.direction);
  return pts;
}

// --- Isoperimetrix ---------------------------------------------------------

Isoperimetrix build_isoperimetrix(const ConvexPolygon& L) {
  const auto n = static_cast<std::ptrdiff_t>(L.size());
  const auto& a = L.facets();
  auto facet = [&](std::ptrdiff_t k) -> const Vec2& { return a[static_cast<std::size_t>(((k % n) + n) % n)]; };

  // a_k - a_{k-1} = lambda_k * rot90(v_k) with lambda_k > 0.
  std::vector<Rational> lambda(static_cast<std::size_t>(n));
  Rational perimeter = 0;
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const Vec2 diff = facet(k) - facet(k - 1);
    const Vec2& v = L.vertex(k);
    const Vec2 r(-v.y, v.x);
    Rational l = r.x != 0 ? Rational(diff.x / r.x) : Rational(diff.y / r.y);
    if (sgn(l) <= 0) throw AtlasInconsistency("nonpositive isoperimetrix side");
    perimeter += l;
    lambda[static_cast<std::size_t>(k)] = std::move(l);
  }

  std::vector<Vec2> corners;
  corners.reserve(static_cast<std::size_t>(n));
  for (std::ptrdiff_t k = 0; k < n; ++k) corners.push_back(rotate_cw(facet(k)) / perimeter);

  Isoperimetrix iso{ConvexPolygon::from_vertices(corners), {}, 0};
  iso.area = iso.polygon.area();

  // iota(0) is the canonical start vertex of I_1; it is the end of side k0.
  const Vec2& anchor = iso.polygon.vertices().front();
  std::ptrdiff_t k0 = 0;
  while (!(corners[static_cast<std::size_t>(k0)] == anchor)) ++k0;

  iso.sides.resize(static_cast<std::size_t>(n));
  Rational offset = 0;
  for (std::ptrdiff_t step = 1; step <= n; ++step) {
    const std::ptrdiff_t k = (k0 + step) % n;
    IsoSide& side = iso.sides[static_cast<std::size_t>(k)];
    side.index = static_cast<int>(k) + 1;
    side.direction = L.vertex(k);
    side.length = lambda[static_cast<std::size_t>(k)] / perimeter;
    side.offset = offset;
    side.start = corners[static_cast<std::size_t>(((k - 1) % n + n) % n)];
    side.end = corners[static_cast<std::size_t>(k)];
    offset += side.length;
  }
  return iso;
}

// --- Quad ------------------------------------------------------------------

bool Quad::contains(const Vec2& p) const {
  for (const auto& h : edges) {
    if (dot(h.normal, p) < h.offset) return false;
  }
  return true;
}

bool Quad::contains_scaled(const Vec2& p, const Rational& r) const {
  for (const auto& h : edges) {
    if (dot(h.normal, p) < h.offset * r) return false;
  }
  return true;
}

bool Quad::contains_scaled(const Vec2& p, const AlgebraicScalar& t) const {
  for (const auto& h : edges) {
    const AlgebraicScalar lhs = AlgebraicScalar(dot(h.normal, p)) - AlgebraicScalar(h.offset) * t;
    if (lhs.sign() < 0) return false;
  }
  return true;
}

// --- PanelAtlas ------------------------------------------------------------

const Vec2& PanelAtlas::v(int i) const { return L_.vertex(i - 1); }

const Rational& PanelAtlas::ell(int i) const {
  const int n = static_cast<int>(L_.size());
  return iso_.sides[static_cast<std::size_t>((((i - 1) % n) + n) % n)].length;
}

std::optional<std::size_t> PanelAtlas::locate(const Vec2& p) const {
  for (std::size_t q = 0; q < quads_.size(); ++q) {
    if (quads_[q].contains(p)) return q;
  }
  return std::nullopt;
}

std::optional<std::size_t> PanelAtlas::locate_scaled(const Vec2& p, const Rational& r) const {
  for (std::size_t q = 0; q < quads_.size(); ++q) {
    if (quads_[q].contains_scaled(p, r)) return q;
  }
  return std::nullopt;
}

PanelAtlas PanelAtlas::build(const ConvexPolygon& L) {
  PanelAtlas atlas(L, build_isoperimetrix(L));
  const int n = static_cast<int>(L.size());
  auto wrap = [n](int i) { return ((i - 1) % n + n) % n + 1; };

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int gap = ((j - i) % n + n) % n;
      if (gap < 2) continue;  // Q_ii and Q_{i,i+1} are degenerate

      Rational mid_len = 0;
      Vec2 mid_vec;
      for (int m = i + 1; m < i + gap; ++m) {
        mid_len += atlas.ell(wrap(m));
        mid_vec = mid_vec + atlas.ell(wrap(m)) * atlas.v(wrap(m));
      }
      const Vec2& vi = atlas.v(i);
      const Vec2& vj = atlas.v(j);
      const Rational& li = atlas.ell(i);
      const Rational& lj = atlas.ell(j);

      Quad quad;
      quad.id = {i, j};
      quad.directions = gap + 1;

      // Corners: the first side's start point held at either end of side i,
      // the last side's end point at either end of side j.
      const std::array<std::pair<Rational, Rational>, 4> circuit{
          std::pair{li, Rational(0)}, std::pair{li, lj}, std::pair{Rational(0), lj}, std::pair{Rational(0), Rational(0)}};
      std::vector<Vec2> corners;
      for (const auto& [alpha, beta] : circuit) {
        corners.push_back((alpha * vi + mid_vec + beta * vj) / (alpha + mid_len + beta));
      }
      const int orient = sgn(shoelace_area(corners));
      if (orient == 0) throw AtlasInconsistency("zero-area quad");
      if (orient < 0) std::reverse(corners.begin(), corners.end());
      for (std::size_t k = 0; k < 4; ++k) {
        const Vec2 e1 = corners[(k + 1) % 4] - corners[k];
        const Vec2 e2 = corners[(k + 2) % 4] - corners[(k + 1) % 4];
        if (sgn(cross(e1, e2)) < 0) throw AtlasInconsistency("nonconvex quad");
      }
      for (int k = 0; k < 4; ++k) {
        quad.vertices[static_cast<std::size_t>(k)] = corners[static_cast<std::size_t>(k)];
        quad.edges[static_cast<std::size_t>(k)] =
            edge_half_plane(corners[static_cast<std::size_t>(k)], corners[static_cast<std::size_t>((k + 1) % 4)]);
      }

      // (s1, s, s2) as affine functions of (x, y).
      const Matrix3 system{{{li, mid_len, lj},
                            {li * vi.x, mid_vec.x, lj * vj.x},
                            {li * vi.y, mid_vec.y, lj * vj.y}}};
      const auto inv = invert(system);
      if (!inv) throw AtlasInconsistency("singular trace-path system for quad " + std::to_string(i) + "," + std::to_string(j));
      auto row = [&](int r) {
        const auto& m = *inv;
        return AffineForm{m[r][1], m[r][2], m[r][0]};
      };
      quad.s_first = row(0);
      quad.s_middle = row(1);
      quad.s_last = row(2);

      // Compose the shoelace form of the vertex chain with the solution.
      std::vector<AffineVec> chain;
      chain.push_back({(li * vi.x) * quad.s_first, (li * vi.y) * quad.s_first});
      for (int m = i + 1; m < i + gap; ++m) {
        const Vec2 w = atlas.ell(wrap(m)) * atlas.v(wrap(m));
        const AffineVec& prev = chain.back();
        chain.push_back({prev.x + w.x * quad.s_middle, prev.y + w.y * quad.s_middle});
      }
      {
        const AffineVec& prev = chain.back();
        chain.push_back({prev.x + (lj * vj.x) * quad.s_last, prev.y + (lj * vj.y) * quad.s_last});
      }
      if (!(chain.back().x == AffineForm{1, 0, 0}) || !(chain.back().y == AffineForm{0, 1, 0}))
        throw AtlasInconsistency("trace-path endpoint does not reproduce (x, y)");
      Quadratic2 twice_area;
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) twice_area = twice_area + affine_cross(chain[k], chain[k + 1]);
      quad.poly = Rational(1, 2) * twice_area;

      // Independent check at interior points against directly built paths.
      const std::array<std::pair<Rational, Rational>, 3> probes{
          std::pair{Rational(1, 2), Rational(1, 2)}, std::pair{Rational(1, 3), Rational(2, 3)},
          std::pair{Rational(3, 4), Rational(1, 5)}};
      for (const auto& [fa, fb] : probes) {
        const Rational alpha = fa * li;
        const Rational beta = fb * lj;
        const Rational scale = 1 / (alpha + mid_len + beta);
        std::vector<PathSegment> segs{{vi, scale * alpha}};
        for (int m = i + 1; m < i + gap; ++m) segs.push_back({atlas.v(wrap(m)), scale * atlas.ell(wrap(m))});
        segs.push_back({vj, scale * beta});
        const PathShape direct = PathShape::from_segments(std::move(segs));
        if (direct.total != 1 || quad.poly(direct.endpoint) != direct.balayage || !quad.contains(direct.endpoint) ||
            quad.s_first(direct.endpoint) * li != scale * alpha || quad.s_last(direct.endpoint) * lj != scale * beta) {
          throw AtlasInconsistency("balayage quadratic failed verification on quad " + std::to_string(i) + "," +
                                   std::to_string(j));
        }
      }
      quad.max_value = max_over_convex(quad.poly, quad.vertices);
      atlas.quads_.push_back(std::move(quad));
    }
  }
  std::sort(atlas.quads_.begin(), atlas.quads_.end(), [](const Quad& a, const Quad& b) { return a.id < b.id; });

  Rational covered = 0;
  for (const auto& q : atlas.quads_) {
    covered += shoelace_area(q.vertices);
    atlas.a_max_ = std::max(atlas.a_max_, q.max_value);
  }
  if (covered != L.area()) throw AtlasInconsistency("quads do not tile Q");

  for (int k = 1; k <= n; ++k) {
    SidePanel side;
    side.k = k;
    side.from = atlas.v(k);
    side.to = atlas.v(wrap(k + 1));
    side.cross = cross(side.from, side.to);
    side.peak = side.cross / 8;
    atlas.sides_.push_back(std::move(side));

    NullSegment seg;
    seg.i = k;
    seg.direction = -atlas.v(k);
    seg.length = atlas.ell(k) / (1 - atlas.ell(k));
    seg.endpoint = seg.length * seg.direction;
    atlas.null_segments_.push_back(std::move(seg));
  }
  for (const auto& v : L.vertices()) {
    const auto q = atlas.locate(v);
    if (!q || atlas.quads_[*q].poly(v) != 0) throw AtlasInconsistency("balayage does not vanish at a vertex of L");
  }
  return atlas;
}

// --- queries -----------------------------------------------------------------

Rational homogenized(const Quadratic2& q, const Vec2& p, const Rational& n) {
  return q.a1 * p.x * p.x + q.a2 * p.x * p.y + q.a3 * p.y * p.y + (q.b1 * p.x + q.b2 * p.y) * n + q.c * n * n;
}

BalayageValue balayage(const PanelAtlas& atlas, const Vec2& p) {
  if (gauge_norm(atlas.L(), p) > 1) throw OutsideQ("point " + to_string(p) + " lies outside Q");
  const auto q = atlas.locate(p);
  if (!q) throw AtlasInconsistency("no quad contains " + to_string(p));
  const Quad& quad = atlas.quads()[*q];
  return {quad.poly(p), quad.id, *q};
}

PathShape trace_shape_in_quad(const PanelAtlas& atlas, std::size_t quad_index, const Vec2& p) {
  const Quad& quad = atlas.quads()[quad_index];
  const int n = static_cast<int>(atlas.sides_count());
  const auto [i, j] = quad.id;
  std::vector<PathSegment> segs;
  segs.push_back({atlas.v(i), atlas.ell(i) * quad.s_first(p)});
  const Rational s = quad.s_middle(p);
  for (int m = i + 1; m < i + quad.directions - 1; ++m) {
    const int mm = (m - 1) % n + 1;
    segs.push_back({atlas.v(mm), atlas.ell(mm) * s});
  }
  segs.push_back({atlas.v(j), atlas.ell(j) * quad.s_last(p)});
  return PathShape::from_segments(std::move(segs));
}

PathShape trace_shape(const PanelAtlas& atlas, const Vec2& p) {
  const BalayageValue b = balayage(atlas, p);
  return trace_shape_in_quad(atlas, b.quad_index, p);
}

Rational height(const PanelAtlas& atlas, const Rational& n, const Vec2& p) {
  if (sgn(n) < 0 || gauge_norm(atlas.L(), p) > n) throw OutsideBall("point " + to_string(p) + " lies outside the radius-" + to_string(n) + " footprint");
  if (n == 0) return 0;
  const auto q = atlas.locate_scaled(p, n);
  if (!q) throw AtlasInconsistency("no quad contains " + to_string(p) + " / " + to_string(n));
  return homogenized(atlas.quads()[*q].poly, p, n);
}

bool in_nonuniqueness_locus(const PanelAtlas& atlas, const Vec2& p) {
  const Rational g = gauge_norm(atlas.L(), p);
  if (g > 1) throw OutsideQ("point " + to_string(p) + " lies outside Q");
  if (g == 1) {
    const auto& vs = atlas.L().vertices();
    return std::find(vs.begin(), vs.end(), p) == vs.end();
  }
  for (const auto& seg : atlas.null_segments()) {
    if (cross(seg.direction, p) != 0 || sgn(dot(seg.direction, p)) < 0) continue;
    // p = mu * direction with mu >= 0
    const Rational mu = seg.direction.x != 0 ? Rational(p.x / seg.direction.x) : Rational(p.y / seg.direction.y);
    if (mu < seg.length) return true;
  }
  return false;
}

// --- mesh ------------------------------------------------------------------

TriangleMesh sphere_mesh(const PanelAtlas& atlas, int subdivisions) {
  if (subdivisions < 1) throw InvalidInput("subdivisions must be >= 1");
  TriangleMesh mesh;
  const Rational k(subdivisions);

  auto grid = [&](MeshGroup& group, auto&& point_at) {
    const std::size_t base = mesh.vertices.size();
    for (int a = 0; a <= subdivisions; ++a)
      for (int b = 0; b <= subdivisions; ++b) mesh.vertices.push_back(point_at(Rational(a) / k, Rational(b) / k));
    const auto stride = static_cast<std::size_t>(subdivisions + 1);
    for (std::size_t a = 0; a < static_cast<std::size_t>(subdivisions); ++a) {
      for (std::size_t b = 0; b < static_cast<std::size_t>(subdivisions); ++b) {
        const std::size_t v00 = base + a * stride + b;
        const std::size_t v01 = v00 + 1;
        const std::size_t v10 = v00 + stride;
        const std::size_t v11 = v10 + 1;
        group.faces.push_back({v00, v10, v11});
        group.faces.push_back({v00, v11, v01});
      }
    }
  };

  for (const auto& quad : atlas.quads()) {
    for (const int sgn_z : {1, -1}) {
      MeshGroup group{"panel_" + std::to_string(quad.id.i) + "_" + std::to_string(quad.id.j) + (sgn_z > 0 ? "_pos" : "_neg"), {}};
      const auto& c = quad.vertices;
      grid(group, [&](const Rational& u, const Rational& w) {
        // bilinear patch over the quad corners
        const Vec2 p = (1 - u) * ((1 - w) * c[0] + w * c[1]) + u * ((1 - w) * c[3] + w * c[2]);
        return MeshVertex{p.x, p.y, Rational(sgn_z) * quad.poly(p)};
      });
      mesh.groups.push_back(std::move(group));
    }
  }
  for (const auto& side : atlas.sides()) {
    MeshGroup group{"side_" + std::to_string(side.k), {}};
    grid(group, [&](const Rational& u, const Rational& w) {
      // edge parameter u, vertical parameter from -A to A
      const Vec2 p = (1 - u) * side.from + u * side.to;
      const Rational top = side.cross * u * (1 - u) / 2;
      return MeshVertex{p.x, p.y, (2 * w - 1) * top};
    });
    mesh.groups.push_back(std::move(group));
  }
  return mesh;
}

}  // namespace heiscc
