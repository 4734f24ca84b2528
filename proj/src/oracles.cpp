#include "heiscc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "heiscc/errors.hpp"

namespace heiscc {

namespace {

constexpr std::uint64_t kShards = 16;

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(shard)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

struct Box {
  double x0, x1, y0, y1, z0, z1;
  double volume() const { return (x1 - x0) * (y1 - y0) * (z1 - z0); }
};

// Counts hits of `inside` over `samples` uniform points of the box.
template <class F>
McEstimate sample_box(const Box& box, std::uint64_t samples, std::uint64_t seed, unsigned threads, F inside) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::uint64_t> hits(kShards, 0);
  auto run_shard = [&](std::uint64_t s) {
    std::mt19937_64 rng(shard_seed(seed, s));
    std::uniform_real_distribution<double> ux(box.x0, box.x1), uy(box.y0, box.y1), uz(box.z0, box.z1);
    const std::uint64_t n = samples / kShards + (s < samples % kShards ? 1 : 0);
    std::uint64_t h = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const double x = ux(rng), y = uy(rng), z = uz(rng);
      if (inside(x, y, z)) ++h;
    }
    hits[s] = h;
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::uint64_t>(threads, kShards); ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t s = t; s < kShards; s += std::min<std::uint64_t>(threads, kShards)) run_shard(s);
    });
  }
  for (auto& t : pool) t.join();

  McEstimate e;
  e.samples = samples;
  e.seed = seed;
  for (auto h : hits) e.hits += h;
  const double f = static_cast<double>(e.hits) / static_cast<double>(samples);
  e.volume = f * box.volume();
  e.std_error = std::sqrt(f * (1 - f) / static_cast<double>(samples)) * box.volume();
  return e;
}

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return make_rational(d(rng), den);
}

Rational path_length(const ConvexPolygon& L, const std::vector<Vec2>& pts) {
  Rational total = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += gauge_norm(L, pts[k + 1] - pts[k]);
  return total;
}

// Pulls the interior points toward the chord until the path has L-length <= 1,
// then appends an out-and-back spike along v_1 to make the length exactly 1.
std::vector<Vec2> normalize_length(const ConvexPolygon& L, std::vector<Vec2> pts) {
  const Vec2 end = pts.back();
  const std::size_t m = pts.size() - 1;
  std::vector<Vec2> base(pts.size());
  for (std::size_t k = 0; k <= m; ++k) base[k] = make_rational(static_cast<long>(k), static_cast<long>(m)) * end;
  Rational len = path_length(L, pts);
  while (len > 1) {
    for (std::size_t k = 1; k < m; ++k) pts[k] = base[k] + Rational(1, 2) * (pts[k] - base[k]);
    len = path_length(L, pts);
  }
  if (len < 1) {
    const Rational half = (1 - len) / 2;
    pts.push_back(end + half * L.vertex(0));
    pts.push_back(end);
  }
  return pts;
}

}  // namespace

McEstimate mc_panel_volume(const PanelAtlas& atlas, std::size_t quad_index, std::uint64_t samples, std::uint64_t seed,
                           unsigned threads) {
  const Quad& q = atlas.quads().at(quad_index);
  double vx[4], vy[4];
  Box box{0, 0, 0, 0, 0, to_double(q.max_value)};
  for (int k = 0; k < 4; ++k) {
    vx[k] = to_double(q.vertices[static_cast<std::size_t>(k)].x);
    vy[k] = to_double(q.vertices[static_cast<std::size_t>(k)].y);
    box.x0 = std::min(box.x0, vx[k]);
    box.x1 = std::max(box.x1, vx[k]);
    box.y0 = std::min(box.y0, vy[k]);
    box.y1 = std::max(box.y1, vy[k]);
  }
  const double a1 = to_double(q.poly.a1), a2 = to_double(q.poly.a2), a3 = to_double(q.poly.a3);
  const double b1 = to_double(q.poly.b1), b2 = to_double(q.poly.b2), c = to_double(q.poly.c);
  auto in_quad = [&](double x, double y) {
    for (int k = 0; k < 4; ++k) {
      const int n = (k + 1) % 4;
      if ((vx[n] - vx[k]) * (y - vy[k]) - (vy[n] - vy[k]) * (x - vx[k]) < 0) return false;
    }
    return true;
  };
  // (X, Y, Z) = (s x, s y, s^2 A(x, y)) with (x, y) in the quad and s in (0, 1].
  auto inside = [&](double X, double Y, double Z) {
    const double qa = c, qb = b1 * X + b2 * Y, qc = a1 * X * X + a2 * X * Y + a3 * Y * Y - Z;
    double roots[2];
    int nr = 0;
    if (qa == 0) {
      if (qb == 0) return false;
      roots[nr++] = -qc / qb;
    } else {
      const double disc = qb * qb - 4 * qa * qc;
      if (disc < 0) return false;
      const double sq = std::sqrt(disc);
      roots[nr++] = (-qb - sq) / (2 * qa);
      roots[nr++] = (-qb + sq) / (2 * qa);
    }
    for (int r = 0; r < nr; ++r) {
      const double s = roots[r];
      if (s > 0 && s <= 1 && in_quad(X / s, Y / s)) return true;
    }
    return false;
  };
  return sample_box(box, samples, seed, threads, inside);
}

McEstimate mc_side_volume(const PanelAtlas& atlas, int k, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  const SidePanel& s = atlas.sides().at(static_cast<std::size_t>(k - 1));
  const double fx = to_double(s.from.x), fy = to_double(s.from.y);
  const double tx = to_double(s.to.x), ty = to_double(s.to.y);
  const double c = to_double(s.cross);
  const double peak = to_double(s.peak);
  Box box{std::min({0.0, fx, tx}), std::max({0.0, fx, tx}), std::min({0.0, fy, ty}), std::max({0.0, fy, ty}), -peak, peak};
  // Footprint p*from + q*to; the side panel over it spans |z| <= A(foot) s^2.
  auto inside = [&](double X, double Y, double Z) {
    const double p = (ty * X - tx * Y) / c;
    const double q = (-fy * X + fx * Y) / c;
    if (p < 0 || q < 0 || p + q > 1) return false;
    const double sum = p + q;
    if (sum == 0) return Z == 0;
    const double a = p / sum;
    const double height = c * a * (1 - a) / 2 * sum * sum;
    return std::abs(Z) <= height;
  };
  return sample_box(box, samples, seed, threads, inside);
}

DidoReport dido_random_paths(const PanelAtlas& atlas, std::size_t endpoints, std::size_t paths_per_endpoint, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ConvexPolygon& L = atlas.L();
  Rational bx = 0, by = 0;
  for (const auto& v : L.vertices()) {
    bx = std::max(bx, abs(v.x));
    by = std::max(by, abs(v.y));
  }
  const long ext = std::max(ceil(bx).get_si(), ceil(by).get_si());
  DidoReport rep;
  bool first = true;
  std::uniform_int_distribution<int> count_dist(1, 5);
  while (rep.endpoints < endpoints) {
    const Vec2 p(random_rational(rng, -ext, ext, 64), random_rational(rng, -ext, ext, 64));
    if (gauge_norm(L, p) >= 1) continue;
    ++rep.endpoints;
    const Rational target = balayage(atlas, p).value;
    const auto trace = trace_shape(atlas, p).vertices();
    for (std::size_t k = 0; k < paths_per_endpoint; ++k) {
      std::vector<Vec2> pts{Vec2()};
      if (k % 10 == 0 && trace.size() > 2) {
        // Near-optimal competitor: the trace path with its corners jittered.
        for (std::size_t m = 1; m + 1 < trace.size(); ++m)
          pts.push_back(trace[m] + Vec2(random_rational(rng, -1, 1, 512), random_rational(rng, -1, 1, 512)) / 16);
      } else {
        const int m = count_dist(rng);
        for (int i = 0; i < m; ++i) pts.emplace_back(random_rational(rng, -ext, ext, 64), random_rational(rng, -ext, ext, 64));
      }
      pts.push_back(p);
      pts = normalize_length(L, std::move(pts));
      const Rational area = shoelace_area(pts);
      const Rational slack = target - area;
      if (sgn(slack) < 0) ++rep.violations;
      if (first || slack < rep.min_slack) rep.min_slack = slack;
      first = false;
      ++rep.paths;
    }
  }
  return rep;
}

StaircaseReport staircase_oracle(const PanelAtlas& atlas) {
  const std::array<Vec2, 4> axes{Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
  if (!(atlas.L() == ConvexPolygon::from_vertices({axes.begin(), axes.end()})))
    throw InvalidInput("the staircase oracle needs the l1-square atlas");
  constexpr int kSteps = 8;
  const int dx[4] = {1, 0, -1, 0};
  const int dy[4] = {0, 1, 0, -1};
  // Twice the area in grid units, maximized per endpoint.
  std::map<std::pair<int, int>, long> best;
  StaircaseReport rep;
  for (int code = 0; code < (1 << (2 * kSteps)); ++code) {
    int x = 0, y = 0;
    long twice = 0;
    for (int s = 0; s < kSteps; ++s) {
      const int d = (code >> (2 * s)) & 3;
      const int nx = x + dx[d], ny = y + dy[d];
      twice += static_cast<long>(x) * ny - static_cast<long>(y) * nx;
      x = nx;
      y = ny;
    }
    auto [it, fresh] = best.try_emplace({x, y}, twice);
    if (!fresh) it->second = std::max(it->second, twice);
    ++rep.paths;
  }
  for (const auto& [pt, twice] : best) {
    const Vec2 p(make_rational(pt.first, kSteps), make_rational(pt.second, kSteps));
    const Rational area = make_rational(twice, 2 * kSteps * kSteps);
    if (area > balayage(atlas, p).value) ++rep.violations;
    if (pt == std::pair{0, 0}) rep.best_at_origin = area;
    if (pt == std::pair{kSteps / 2, kSteps / 2}) rep.best_at_half = area;
    ++rep.endpoints;
  }
  return rep;
}

}  // namespace heiscc
