#pragma once

// Lattice-point counts in CC annuli and word-metric spheres, column by
// column: for each integer footprint (x, y) the admissible heights form the
// window |z| <= H with z in Z (x*y even) or Z + 1/2 (x*y odd).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiscc/atlas.hpp"
#include "heiscc/lattice.hpp"

namespace heiscc {

/// Half-open angular sector {p : cross(from, p) >= 0, cross(to, p) < 0},
/// opening angle below pi. The origin column belongs to the sector that
/// contains the direction (1, 0).
struct Sector {
  Vec2 from;
  Vec2 to;
  bool contains(const Vec2& p) const;
};

/// Regular and unstable parts of a sphere: a point is unstable when its CC
/// distance equals the L-norm of its footprint.
enum class Part { All, Regular, Unstable };

struct Region {
  std::optional<Sector> sector;  ///< none = full footprint
  Part part = Part::All;

  static Region full() { return {}; }
  std::string describe() const;
};

/// Rays through the vertices of L (2N sectors) or through vertices and edge
/// midpoints (4N sectors), CCW from v_1.
std::vector<Sector> symmetric_sectors(const ConvexPolygon& L, int count);

/// Q intersected with the sector, as a convex polygon through the origin.
std::vector<Vec2> sector_footprint(const ConvexPolygon& L, const Sector& s);

/// Cone volume of the part of the unit sphere selected by the region.
Rational region_cone_volume(const PanelAtlas& atlas, const Region& region);

/// Lattice points with n - 1 < d_CC <= n.
std::uint64_t annulus_count(const PanelAtlas& atlas, std::int64_t n, const Region& region = Region::full(), unsigned threads = 0);

/// Lattice points with d_CC <= n.
std::uint64_t ball_count(const PanelAtlas& atlas, std::int64_t n, const Region& region = Region::full(), unsigned threads = 0);

/// #(S_n in the region) for the standard generators, from the closed-form
/// word length. `atlas` must be the l1-square atlas.
std::uint64_t sphere_sector_count_std(const PanelAtlas& atlas, std::int64_t n, const Region& region = Region::full(),
                                      unsigned threads = 0);

/// Per-sector S_n counts in one pass (closed form, standard generators).
std::vector<std::uint64_t> sphere_sector_counts_std(const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors,
                                                    unsigned threads = 0);

/// #(S_n in the region) from a BFS table (any generators).
std::uint64_t sphere_sector_count(const WordBall& ball, const PanelAtlas& atlas, std::int64_t n, const Region& region = Region::full());

struct SectorMeasure {
  std::int64_t n = 0;
  std::vector<Sector> sectors;
  std::vector<Rational> expected;  ///< cone measure vol(sector cone) / V
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double max_deviation = 0;  ///< max |count / total - expected|
};

/// Counting measure of S_n on the sectors against the cone measure,
/// closed form for the standard generators.
SectorMeasure sector_measure_std(const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors, unsigned threads = 0);

/// Same from a BFS table (any generators).
SectorMeasure sector_measure(const WordBall& ball, const PanelAtlas& atlas, std::int64_t n, const std::vector<Sector>& sectors);

enum class CountMode { Annulus, Sphere, Ball };
std::string to_string(CountMode m);
CountMode parse_count_mode(const std::string& s);

struct CensusRow {
  std::int64_t n = 0;
  std::uint64_t count = 0;
  Rational prediction{0};
  double ratio = 0;     ///< count / prediction
  double residual = 0;  ///< count - prediction
};

struct CensusTable {
  CountMode mode = CountMode::Annulus;
  std::string region;
  Rational cone_volume{0};  ///< vol of the cone over the selected sphere part
  std::vector<CensusRow> rows;
};

/// Predictions: annulus 4 vol n^3, ball vol n^4, sphere 4 vol n^3 (the
/// sphere constant is empirical; see README).
CensusTable convergence_table(CountMode mode, const PanelAtlas& atlas, const std::vector<std::int64_t>& ns,
                              const Region& region = Region::full(), unsigned threads = 0);

}  // namespace heiscc
