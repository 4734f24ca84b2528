#include "heiscc/counting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "heiscc/errors.hpp"
#include "heiscc/volumes.hpp"

namespace heiscc {

namespace {

using i128 = __int128;

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw OutOfRange("atlas coefficient does not fit in 64 bits");
  return z.get_si();
}

Integer lcm_of_denominators(std::initializer_list<const Rational*> values) {
  Integer l = 1;
  for (const Rational* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

i128 scaled(const Rational& v, const Integer& by) { return to_i64(Integer(v * by)); }

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Lattice heights with |z| <= num / den in a column whose x*y has the given parity.
std::uint64_t window(i128 num, i128 den, bool odd) {
  if (num < 0) return 0;
  if (!odd) return static_cast<std::uint64_t>(2 * floor_div(num, den) + 1);
  return static_cast<std::uint64_t>(2 * floor_div(2 * num + den, 2 * den));
}

// Integer-scaled copy of the atlas for fast column evaluation. A radius is a
// fraction N / S; heights come back as fractions num / den.
class IntAtlas {
 public:
  explicit IntAtlas(const PanelAtlas& atlas) {
    const auto& f = atlas.L().facets();
    Integer df = 1;
    for (const auto& a : f) {
      mpz_lcm(df.get_mpz_t(), df.get_mpz_t(), a.x.get_den_mpz_t());
      mpz_lcm(df.get_mpz_t(), df.get_mpz_t(), a.y.get_den_mpz_t());
    }
    gauge_den_ = to_i64(df);
    for (const auto& a : f) facets_.push_back({scaled(a.x, df), scaled(a.y, df)});
    for (const auto& v : atlas.L().vertices()) {
      max_x_ = std::max(max_x_, abs(v.x));
      max_y_ = std::max(max_y_, abs(v.y));
    }
    for (const auto& q : atlas.quads()) {
      IntQuad iq;
      for (std::size_t k = 0; k < 4; ++k) {
        const HalfPlane& h = q.edges[k];
        const Integer l = lcm_of_denominators({&h.normal.x, &h.normal.y, &h.offset});
        iq.ex[k] = scaled(h.normal.x, l);
        iq.ey[k] = scaled(h.normal.y, l);
        iq.eo[k] = scaled(h.offset, l);
      }
      const Quadratic2& p = q.poly;
      const Integer d = lcm_of_denominators({&p.a1, &p.a2, &p.a3, &p.b1, &p.b2, &p.c});
      iq.d = to_i64(d);
      iq.a1 = scaled(p.a1, d);
      iq.a2 = scaled(p.a2, d);
      iq.a3 = scaled(p.a3, d);
      iq.b1 = scaled(p.b1, d);
      iq.b2 = scaled(p.b2, d);
      iq.c = scaled(p.c, d);
      quads_.push_back(iq);
    }
  }

  /// L-norm of (x, y) times gauge_den().
  i128 gauge_num(i128 x, i128 y) const {
    i128 best = facets_[0][0] * x + facets_[0][1] * y;
    for (const auto& a : facets_) best = std::max(best, a[0] * x + a[1] * y);
    return best;
  }
  i128 gauge_den() const { return gauge_den_; }

  /// Height of the radius-(N/S) sphere over (x, y), as num / den. Requires
  /// the footprint inside the radius.
  std::pair<i128, i128> height(i128 x, i128 y, i128 N, i128 S) const {
    if (N == 0) return {0, 1};
    for (const auto& q : quads_) {
      bool in = true;
      for (std::size_t k = 0; k < 4 && in; ++k) in = S * (q.ex[k] * x + q.ey[k] * y) >= q.eo[k] * N;
      if (!in) continue;
      const i128 num = (q.a1 * x * x + q.a2 * x * y + q.a3 * y * y) * S * S + (q.b1 * x + q.b2 * y) * N * S + q.c * N * N;
      return {num, q.d * S * S};
    }
    throw AtlasInconsistency("column outside every quad");
  }

  std::int64_t box_x(std::int64_t n) const { return ceil(max_x_ * n).get_si(); }
  std::int64_t box_y(std::int64_t n) const { return ceil(max_y_ * n).get_si(); }

 private:
  struct IntQuad {
    std::array<i128, 4> ex{}, ey{}, eo{};
    i128 a1 = 0, a2 = 0, a3 = 0, b1 = 0, b2 = 0, c = 0, d = 1;
  };
  std::vector<std::array<i128, 2>> facets_;
  i128 gauge_den_ = 1;
  Rational max_x_{0}, max_y_{0};
  std::vector<IntQuad> quads_;
};

// Integer direction vectors for fast sector tests.
struct IntSector {
  i128 fx, fy, tx, ty;
  bool origin;

  explicit IntSector(const Sector& s) {
    const Integer lf = lcm_of_denominators({&s.from.x, &s.from.y});
    const Integer lt = lcm_of_denominators({&s.to.x, &s.to.y});
    fx = scaled(s.from.x, lf);
    fy = scaled(s.from.y, lf);
    tx = scaled(s.to.x, lt);
    ty = scaled(s.to.y, lt);
    origin = test(1, 0);
  }
  bool test(i128 x, i128 y) const { return fx * y - fy * x >= 0 && tx * y - ty * x < 0; }
  bool contains(i128 x, i128 y) const { return (x == 0 && y == 0) ? origin : test(x, y); }
};

// Sums per-column counts into `slots` accumulators over the box of radius n.
template <class F>
std::vector<std::uint64_t> sum_columns(const IntAtlas& ia, std::int64_t n, std::size_t slots, unsigned threads, F&& column) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::int64_t bx = ia.box_x(n);
  const std::int64_t by = ia.box_y(n);
  const std::int64_t width = 2 * bx + 1;
  const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(threads, std::max<std::int64_t>(1, width / 16)));
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(workers), std::vector<std::uint64_t>(slots, 0));
  auto run = [&](std::int64_t w) {
    auto& acc = partial[static_cast<std::size_t>(w)];
    for (std::int64_t x = -bx + w; x <= bx; x += workers) {
      for (std::int64_t y = -by; y <= by; ++y) {
        const i128 g = ia.gauge_num(x, y);
        if (g > static_cast<i128>(n) * ia.gauge_den()) continue;
        column(x, y, g, acc);
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> total(slots, 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < slots; ++k) total[k] += p[k];
  return total;
}

bool in_sector(const std::optional<IntSector>& s, std::int64_t x, std::int64_t y) { return !s || s->contains(x, y); }

// Heights window at radius m minus window at radius m - drop (if the column
// reaches it), split by part. g is the gauge numerator over ia.gauge_den().
std::uint64_t shell_column(const IntAtlas& ia, std::int64_t x, std::int64_t y, i128 g, std::int64_t n, std::int64_t drop, Part part) {
  const bool odd = ((x * y) & 1) != 0;
  const i128 den = ia.gauge_den();
  auto at_radius = [&](std::int64_t m) {
    const auto [num, d] = ia.height(x, y, m, 1);
    return window(num, d, odd);
  };
  std::uint64_t all = 0;
  if (part != Part::Unstable) {
    all = at_radius(n);
    if (drop > 0 && n - drop >= 0 && g <= static_cast<i128>(n - drop) * den) all -= at_radius(n - drop);
  }
  std::uint64_t unstable = 0;
  if (part != Part::All) {
    // Unstable lattice points of the shell: gauge in (n - drop, n], |z| <= H_gauge.
    const bool in_shell = drop == 0 ? true : g > static_cast<i128>(n - drop) * den;
    if (in_shell) {
      const auto [num, d] = ia.height(x, y, g, den);
      unstable = window(num, d, odd);
    }
  }
  switch (part) {
    case Part::All: return all;
    case Part::Unstable: return unstable;
    case Part::Regular: return all - unstable;
  }
  return 0;
}

void require_std(const PanelAtlas& atlas) {
  if (!(atlas.L() == GenSet::standard().L)) throw InvalidInput("closed-form sphere counts need the standard-generator atlas");
}

std::optional<IntSector> int_sector(const Region& r) {
  if (!r.sector) return std::nullopt;
  return IntSector(*r.sector);
}

}  // namespace

bool Sector::contains(const Vec2& p) const {
  if (p == Vec2()) return sgn(cross(from, Vec2(1, 0))) >= 0 && sgn(cross(to, Vec2(1, 0))) < 0;
  return sgn(cross(from, p)) >= 0 && sgn(cross(to, p)) < 0;
}

std::string Region::describe() const {
  std::string s = sector ? "sector " + to_string(sector->from) + " -> " + to_string(sector->to) : "full";
  switch (part) {
    case Part::All: break;
    case Part::Regular: s += ", regular part"; break;
    case Part::Unstable: s += ", unstable part"; break;
  }
  return s;
}

std::vector<Sector> symmetric_sectors(const ConvexPolygon& L, int count) {
  const auto n = static_cast<int>(L.size());
  std::vector<Vec2> rays;
  if (count == n) {
    rays = L.vertices();
  } else if (count == 2 * n) {
    for (int k = 0; k < n; ++k) {
      rays.push_back(L.vertex(k));
      rays.push_back(Rational(1, 2) * (L.vertex(k) + L.vertex(k + 1)));
    }
  } else {
    throw InvalidInput("sector count must be " + std::to_string(n) + " or " + std::to_string(2 * n) + " for this polygon");
  }
  std::vector<Sector> out;
  for (std::size_t k = 0; k < rays.size(); ++k) out.push_back({rays[k], rays[(k + 1) % rays.size()]});
  return out;
}

std::vector<Vec2> sector_footprint(const ConvexPolygon& L, const Sector& s) {
  std::vector<Vec2> inner;
  for (const auto& v : L.vertices()) {
    if (sgn(cross(s.from, v)) > 0 && sgn(cross(s.to, v)) < 0) inner.push_back(v);
  }
  std::sort(inner.begin(), inner.end(), [](const Vec2& a, const Vec2& b) { return sgn(cross(a, b)) > 0; });
  std::vector<Vec2> poly{Vec2(), s.from / gauge_norm(L, s.from)};
  poly.insert(poly.end(), inner.begin(), inner.end());
  poly.push_back(s.to / gauge_norm(L, s.to));
  return poly;
}

Rational region_cone_volume(const PanelAtlas& atlas, const Region& region) {
  if (!region.sector) {
    const VolumeReport v = ball_volumes(atlas);
    switch (region.part) {
      case Part::All: return v.V;
      case Part::Regular: return v.V_reg;
      case Part::Unstable: return v.V_uns;
    }
  }
  const auto poly = sector_footprint(atlas.L(), *region.sector);
  const SphereParts parts = region.part == Part::All ? SphereParts::All
                            : region.part == Part::Regular ? SphereParts::Regular
                                                           : SphereParts::Sides;
  return sector_cone_volume(atlas, poly, parts);
}

std::uint64_t annulus_count(const PanelAtlas& atlas, std::int64_t n, const Region& region, unsigned threads) {
  if (n < 1) throw InvalidInput("annulus radius must be >= 1");
  const IntAtlas ia(atlas);
  const auto sec = int_sector(region);
  return sum_columns(ia, n, 1, threads, [&](std::int64_t x, std::int64_t y, i128 g, std::vector<std::uint64_t>& acc) {
    if (in_sector(sec, x, y)) acc[0] += shell_column(ia, x, y, g, n, 1, region.part);
  })[0];
}

std::uint64_t ball_count(const PanelAtlas& atlas, std::int64_t n, const Region& region, unsigned threads) {
  if (n < 0) throw InvalidInput("negative radius");
  const IntAtlas ia(atlas);
  const auto sec = int_sector(region);
  return sum_columns(ia, n, 1, threads, [&](std::int64_t x, std::int64_t y, i128 g, std::vector<std::uint64_t>& acc) {
    if (in_sector(sec, x, y)) acc[0] += shell_column(ia, x, y, g, n, 0, region.part);
  })[0];
}

std::uint64_t sphere_sector_count_std(const PanelAtlas& atlas, std::int64_t n, const Region& region, unsigned threads) {
  require_std(atlas);
  if (n < 0) throw InvalidInput("negative radius");
  const IntAtlas ia(atlas);
  const auto sec = int_sector(region);
  return sum_columns(ia, n, 1, threads, [&](std::int64_t x, std::int64_t y, i128 g, std::vector<std::uint64_t>& acc) {
    if (((x + y + n) & 1) != 0 || !in_sector(sec, x, y)) return;
    acc[0] += shell_column(ia, x, y, g, n, 2, region.part);
  })[0];
}

std::vector<std::uint64_t> sphere_sector_counts_std(const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors,
                                                    unsigned threads) {
  require_std(atlas);
  const IntAtlas ia(atlas);
  std::vector<IntSector> secs;
  for (const auto& s : sectors) secs.emplace_back(s);
  return sum_columns(ia, n, secs.size(), threads, [&](std::int64_t x, std::int64_t y, i128 g, std::vector<std::uint64_t>& acc) {
    if (((x + y + n) & 1) != 0) return;
    const std::uint64_t c = shell_column(ia, x, y, g, n, 2, Part::All);
    for (std::size_t k = 0; k < secs.size(); ++k) {
      if (secs[k].contains(x, y)) acc[k] += c;
    }
  });
}

std::uint64_t sphere_sector_count(const WordBall& ball, const PanelAtlas& atlas, std::int64_t n, const Region& region) {
  if (n < 0 || n > ball.radius())
    throw OutOfRange("sphere radius " + std::to_string(n) + " exceeds the BFS radius " + std::to_string(ball.radius()));
  std::uint64_t count = 0;
  ball.for_each([&](const HeisPoint& p, std::uint32_t len) {
    if (len != static_cast<std::uint32_t>(n)) return;
    const Vec2 xy(p.x, p.y);
    if (region.sector && !region.sector->contains(xy)) return;
    if (region.part != Part::All) {
      const bool unstable = ball_compare(atlas, p.to_cc(), gauge_norm(atlas.L(), xy)) != BallRelation::Outside;
      if (unstable != (region.part == Part::Unstable)) return;
    }
    ++count;
  });
  return count;
}

namespace {

SectorMeasure finish_measure(const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors,
                             std::vector<std::uint64_t> counts) {
  SectorMeasure m;
  m.n = n;
  m.sectors = sectors;
  m.counts = std::move(counts);
  const Rational V = ball_volumes(atlas).V;
  for (const auto& s : sectors) m.expected.push_back(region_cone_volume(atlas, Region{s, Part::All}) / V);
  for (auto c : m.counts) m.total += c;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const double frac = m.total ? static_cast<double>(m.counts[k]) / static_cast<double>(m.total) : 0.0;
    m.max_deviation = std::max(m.max_deviation, std::abs(frac - to_double(m.expected[k])));
  }
  return m;
}

}  // namespace

SectorMeasure sector_measure_std(const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors, unsigned threads) {
  return finish_measure(atlas, n, sectors, sphere_sector_counts_std(atlas, n, sectors, threads));
}

SectorMeasure sector_measure(const WordBall& ball, const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors) {
  std::vector<std::uint64_t> counts;
  for (const auto& s : sectors) counts.push_back(sphere_sector_count(ball, atlas, n, Region{s, Part::All}));
  return finish_measure(atlas, n, sectors, std::move(counts));
}

std::string to_string(CountMode m) {
  switch (m) {
    case CountMode::Annulus: return "annulus";
    case CountMode::Sphere: return "sphere";
    case CountMode::Ball: return "ball";
  }
  return "?";
}

CountMode parse_count_mode(const std::string& s) {
  if (s == "annulus") return CountMode::Annulus;
  if (s == "sphere") return CountMode::Sphere;
  if (s == "ball") return CountMode::Ball;
  throw InvalidInput("unknown count mode '" + s + "' (expected annulus, sphere or ball)");
}

CensusTable convergence_table(CountMode mode, const PanelAtlas& atlas, const std::vector<std::int64_t>& ns, const Region& region,
                              unsigned threads) {
  CensusTable t;
  t.mode = mode;
  t.region = region.describe();
  t.cone_volume = region_cone_volume(atlas, region);
  std::vector<std::int64_t> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  for (const std::int64_t n : sorted) {
    CensusRow row;
    row.n = n;
    const Rational nn(n);
    switch (mode) {
      case CountMode::Annulus:
        row.count = annulus_count(atlas, n, region, threads);
        row.prediction = 4 * t.cone_volume * nn * nn * nn;
        break;
      case CountMode::Sphere:
        row.count = sphere_sector_count_std(atlas, n, region, threads);
        row.prediction = 4 * t.cone_volume * nn * nn * nn;
        break;
      case CountMode::Ball:
        row.count = ball_count(atlas, n, region, threads);
        row.prediction = t.cone_volume * nn * nn * nn * nn;
        break;
    }
    const double pred = to_double(row.prediction);
    row.ratio = pred > 0 ? static_cast<double>(row.count) / pred : 0.0;
    row.residual = to_double(Rational(Integer(std::to_string(row.count))) - row.prediction);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace heiscc
