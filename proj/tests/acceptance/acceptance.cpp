#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heiscc/cc_metric.hpp"
#include "heiscc/counting.hpp"
#include "heiscc/oracles.hpp"
#include "heiscc/verify.hpp"
#include "heiscc/volumes.hpp"

using namespace heiscc;

namespace {

// Pinned tolerances and sizes.
constexpr double kVolumesSeconds = 1.0;
constexpr double kWordLengthSeconds = 10.0;
constexpr double kCountingSeconds = 300.0;
constexpr int kWordLengthRadius = 16;
constexpr std::size_t kDidoEndpoints = 100;
constexpr std::size_t kDidoPaths = 1000;
constexpr std::uint64_t kMcSamples = 10'000'000;
constexpr double kMcTolerance = 0.005;
constexpr std::uint64_t kSeed = 20240611;
constexpr int kPolygonsPerN = 5;

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const PanelAtlas& l1() {
  static const PanelAtlas a = PanelAtlas::build(GenSet::standard().L);
  return a;
}

ConvexPolygon random_polygon(std::mt19937_64& rng, int N) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Vec2> edges;
  while (static_cast<int>(edges.size()) < N) {
    Vec2 e(d(rng), d(rng));
    if (e.y < 0 || (e.y == 0 && e.x <= 0)) continue;
    bool parallel = false;
    for (const auto& f : edges) parallel = parallel || cross(e, f) == 0;
    if (!parallel) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end(), [](const Vec2& a, const Vec2& b) { return cross(a, b) > 0; });
  Vec2 sum;
  for (const auto& e : edges) sum = sum + e;
  std::vector<Vec2> verts{Rational(-1) * sum};
  for (const auto& e : edges) verts.push_back(verts.back() + Rational(2) * e);
  verts.pop_back();
  for (int k = 0; k < N; ++k) verts.push_back(-verts[static_cast<std::size_t>(k)]);
  return ConvexPolygon::from_vertices(verts);
}

Outcome exact_volumes() {
  const auto t0 = Clock::now();
  const PanelAtlas atlas = PanelAtlas::build(GenSet::standard().L);
  const VolumeReport r = ball_volumes(atlas);
  const double secs = seconds_since(t0);
  const bool ok = r.V == make_rational(31, 72) && r.V_reg == make_rational(19, 72) && r.V_uns == make_rational(1, 6) &&
                  r.by_directions.at(4) == make_rational(13, 216) && r.by_directions.at(3) == make_rational(11, 54) &&
                  r.unique_probability == make_rational(19, 31) && secs < kVolumesSeconds;
  std::ostringstream os;
  os << "V=" << to_string(r.V) << " V_reg=" << to_string(r.V_reg) << " V_uns=" << to_string(r.V_uns) << " 4-sided=" << to_string(r.by_directions.at(4))
     << " 3-sided=" << to_string(r.by_directions.at(3)) << " P(unique)=" << to_string(r.unique_probability) << " in " << secs << " s";
  return {ok, os.str()};
}

Outcome atlas_combinatorics() {
  std::mt19937_64 rng(kSeed);
  std::size_t tested = 0, bad = 0;
  for (int N = 2; N <= 6; ++N) {
    for (int k = 0; k < kPolygonsPerN; ++k) {
      const PanelAtlas a = PanelAtlas::build(random_polygon(rng, N));
      ++tested;
      if (a.quads().size() != static_cast<std::size_t>(4 * N * N - 4 * N)) ++bad;
    }
  }
  const std::size_t sq = l1().quads().size();
  const std::size_t hx = PanelAtlas::build(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true).L).quads().size();
  std::ostringstream os;
  os << tested << " random 2N-gons (N=2..6), " << bad << " mismatches; square " << sq << ", hexagon " << hx;
  return {bad == 0 && sq == 8 && hx == 24, os.str()};
}

Outcome word_length_formula() {
  const auto t0 = Clock::now();
  const WordBall ball = bfs_ball(GenSet::standard(), kWordLengthRadius);
  std::size_t bad = 0;
  ball.for_each([&](const HeisPoint& p, std::uint32_t len) { bad += word_length_std(p, l1()) == len ? 0 : 1; });
  const KratGap g = krat_gap_scan(ball, l1());
  const double secs = seconds_since(t0);
  const bool ok = bad == 0 && g.min_gap.sign() >= 0 && g.max_gap < AlgebraicScalar(2) && secs < kWordLengthSeconds;
  std::ostringstream os;
  os << ball.size() << " points of B_16, " << bad << " mismatches; |p| - d_CC in [" << g.min_gap.to_string() << ", " << g.max_gap.to_string()
     << "] (max at " << to_string(g.argmax) << "); " << secs << " s";
  return {ok, os.str()};
}

Outcome spot_distances() {
  std::ostringstream os;
  bool ok = true;
  const AlgebraicScalar d = cc_distance(l1(), {4, 0, 3});
  ok = ok && d == AlgebraicScalar(make_rational(11, 2));
  os << "d(4,0,3)=" << d.to_string();
  for (long n : {2L, 3L, 4L}) {
    const AlgebraicScalar dn = cc_distance(l1(), {n, n, Rational(n * n * n * n) - make_rational(n * n, 2)});
    ok = ok && dn == AlgebraicScalar(4 * n * n - 2 * n);
    os << " d(" << n << "," << n << "," << to_string(Rational(n * n * n * n) - make_rational(n * n, 2)) << ")=" << dn.to_string();
  }
  const Rational a0 = balayage(l1(), Vec2(0, 0)).value;
  ok = ok && a0 == make_rational(1, 16);
  os << " A(0,0)=" << to_string(a0);
  return {ok, os.str()};
}

Outcome counting_theorem() {
  const auto t0 = Clock::now();
  const CensusTable t = convergence_table(CountMode::Annulus, l1(), {64, 128, 256});
  const double secs = seconds_since(t0);
  const double C = std::abs(t.rows[0].residual) / (64.0 * 64.0);
  bool ok = secs < kCountingSeconds;
  std::ostringstream os;
  os << "C=|res(64)|/64^2=" << C;
  for (const auto& r : t.rows) {
    const double bound = C * static_cast<double>(r.n) * static_cast<double>(r.n);
    ok = ok && std::abs(r.residual) <= bound;
    os << "; n=" << r.n << " count=" << r.count << " res/n^2=" << r.residual / (static_cast<double>(r.n) * static_cast<double>(r.n));
  }
  os << "; " << secs << " s";
  return {ok, os.str()};
}

Outcome limit_measure() {
  const auto sectors = symmetric_sectors(l1().L(), 8);
  const SectorMeasure m64 = sector_measure_std(l1(), 64, sectors);
  const SectorMeasure m256 = sector_measure_std(l1(), 256, sectors);
  const double c = static_cast<double>(m256.total) / (256.0 * 256.0 * 256.0);
  std::ostringstream os;
  os << "max deviation n=64: " << m64.max_deviation << ", n=256: " << m256.max_deviation << "; |S_256|/256^3=" << c
     << " (4V=" << 4 * 31.0 / 72 << ", V=" << 31.0 / 72 << ", reported only)";
  return {m256.max_deviation < m64.max_deviation, os.str()};
}

Outcome dido() {
  const DidoReport r = dido_random_paths(l1(), kDidoEndpoints, kDidoPaths, kSeed);
  std::ostringstream os;
  os << r.endpoints << " endpoints x " << r.paths / std::max<std::size_t>(r.endpoints, 1) << " paths, " << r.violations << " exceed A(p); min slack "
     << to_string(r.min_slack);
  return {r.violations == 0 && r.endpoints == kDidoEndpoints, os.str()};
}

Outcome volume_oracle() {
  double worst = 0;
  std::size_t panels = 0;
  for (std::size_t q = 0; q < l1().quads().size(); ++q, ++panels) {
    const double exact = to_double(panel_cone_volume(l1(), q));
    const McEstimate e = mc_panel_volume(l1(), q, kMcSamples, kSeed + q, 0);
    worst = std::max(worst, std::abs(e.volume - exact) / exact);
  }
  for (const auto& s : l1().sides()) {
    const double exact = to_double(side_panel_cone_volume(l1(), s.k));
    const McEstimate e = mc_side_volume(l1(), s.k, kMcSamples, kSeed + 1000 + static_cast<std::uint64_t>(s.k), 0);
    worst = std::max(worst, std::abs(e.volume - exact) / exact);
    ++panels;
  }
  std::ostringstream os;
  os << panels << " panels at " << kMcSamples << " samples, worst relative error " << worst << " (tolerance " << kMcTolerance << ")";
  return {worst <= kMcTolerance, os.str()};
}

Outcome invariant_suites() {
  VerifyOptions opt;
  opt.radius = kWordLengthRadius;
  opt.seed = kSeed;
  opt.mc_samples = 0;          // criterion 8
  opt.dido_endpoints = 0;      // criterion 7
  opt.measure_convergence = false;  // criterion 6
  const auto results = verify_all(GenSet::standard(), opt);
  const auto hex = verify_all(GenSet::make({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}, true), [] {
    VerifyOptions o;
    o.radius = 10;
    o.seed = kSeed;
    o.mc_samples = 0;
    o.dido_endpoints = 0;
    o.measure_convergence = false;
    return o;
  }());
  std::size_t failed = 0;
  std::string first;
  for (const auto* set : {&results, &hex}) {
    for (const auto& r : *set) {
      if (!r.passed) {
        ++failed;
        if (first.empty()) first = r.group + ": " + r.name + " (" + r.detail + ")";
      }
    }
  }
  std::ostringstream os;
  os << results.size() << " checks on the standard generators, " << hex.size() << " on the hexagon generators, " << failed << " failed";
  if (!first.empty()) os << "; first: " << first;
  return {failed == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "run only these criteria (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact volumes of the l1 ball", exact_volumes},
      {"atlas combinatorics", atlas_combinatorics},
      {"word-length formula equals BFS on B_16", word_length_formula},
      {"spot distances", spot_distances},
      {"annulus counts within C n^2, C fitted at n = 64", counting_theorem},
      {"sector measure deviation shrinks from n = 64 to 256", limit_measure},
      {"Dido optimality on random unit paths", dido},
      {"exact cone volumes within 0.5% of Monte Carlo", volume_oracle},
      {"invariant suites", invariant_suites},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::cout << "criterion " << id << ": " << (o.passed ? "PASS" : "FAIL") << "  " << criteria[k].first << "  [" << o.detail << "]" << std::endl;
  }
  return failures ? 1 : 0;
}
