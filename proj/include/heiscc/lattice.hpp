#pragma once

// The integer Heisenberg group with the doubled height w = 2z, so that
// (x, y, w) is integral and w = x*y (mod 2). Group law:
//
//     (x, y, w) * (x', y', w') = (x + x', y + y', w + w' + x y' - y x').

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heiscc/atlas.hpp"
#include "heiscc/cc_metric.hpp"

namespace heiscc {

struct HeisPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t w = 0;

  /// Throws InvalidInput when w and x*y differ in parity.
  static HeisPoint checked(std::int64_t x, std::int64_t y, std::int64_t w);

  CCPoint to_cc() const;
  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;
  friend auto operator<=>(const HeisPoint&, const HeisPoint&) = default;
};

std::string to_string(const HeisPoint& p);

/// Throws OutOfRange on 64-bit overflow.
HeisPoint mul(const HeisPoint& a, const HeisPoint& b);
HeisPoint inv(const HeisPoint& a);

struct GenSet {
  std::vector<HeisPoint> elements;  ///< closed under inverse, input order first
  ConvexPolygon L;                  ///< hull of the projections
  Rational max_height{0};           ///< M = max z over the generators

  /// Validates parity, rejects the identity, and closes under inverses when
  /// `symmetrize` is set (otherwise requires closure). DegenerateHull if the
  /// projections do not span the plane.
  static GenSet make(const std::vector<HeisPoint>& generators, bool symmetrize);
  static GenSet standard();
};

/// max CC norm of a generator (the K of the bounded-difference theorem).
AlgebraicScalar max_generator_norm(const GenSet& gens, const PanelAtlas& atlas);

/// Hash map from HeisPoint to word length, complete for lengths <= radius.
class WordBall {
 public:
  int radius() const { return radius_; }
  std::size_t size() const { return count_; }
  /// |S_k| for k = 0..radius.
  const std::vector<std::uint64_t>& sphere_sizes() const { return sphere_sizes_; }
  const std::vector<HeisPoint>& generators() const { return gens_; }

  std::optional<std::uint32_t> length(const HeisPoint& p) const;
  /// All entries sorted by (x, y, w).
  std::vector<std::pair<HeisPoint, std::uint32_t>> sorted_entries() const;
  template <class F>
  void for_each(F&& f) const {
    for (const auto& s : slots_)
      if (s.len != kEmpty) f(HeisPoint{s.x, s.y, s.w}, s.len);
  }

  static constexpr std::size_t kBytesPerEntry = 80;

 private:
  friend WordBall bfs_ball(const GenSet& gens, int n, std::size_t mem_budget, unsigned threads);
  friend WordBall read_wordball(std::istream& in);

  static constexpr std::uint32_t kEmpty = 0xffffffffu;
  struct Slot {
    std::int64_t x = 0, y = 0, w = 0;
    std::uint32_t len = kEmpty;
  };

  bool insert(const HeisPoint& p, std::uint32_t len);
  void reserve(std::size_t entries);
  std::size_t find_slot(const HeisPoint& p) const;

  int radius_ = 0;
  std::vector<HeisPoint> gens_;
  std::vector<Slot> slots_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> sphere_sizes_;
};

/// Default memory budget: HEISCC_MEM_BUDGET if set, else 4 GiB.
std::size_t default_mem_budget();

/// Level-synchronous BFS from the identity. The ball size is estimated as
/// V * n^4 before any allocation; MemoryBudgetExceeded if that estimate
/// (or the actual table) exceeds `mem_budget` bytes. Results do not depend
/// on `threads` (0 = hardware concurrency).
WordBall bfs_ball(const GenSet& gens, int n, std::size_t mem_budget = default_mem_budget(), unsigned threads = 0);

/// Binary format v1: "HZWB", u32 version, u32 radius, u64 count, then
/// sorted records (i64 x, i64 y, i64 w, u32 len), little-endian.
void write_wordball(std::ostream& out, const WordBall& ball);
WordBall read_wordball(std::istream& in);

/// Standard generators: the unique n = x + y (mod 2) with n - 2 < d_CC <= n.
/// `atlas` must be the atlas of the l1 square.
std::int64_t word_length_std(const HeisPoint& p, const PanelAtlas& atlas);

bool parity_check(const HeisPoint& p, std::int64_t n);

struct KratGap {
  AlgebraicScalar max_gap;  ///< max |p| - d_CC(p)
  HeisPoint argmax;
  AlgebraicScalar min_gap;
  HeisPoint argmin;
  std::size_t scanned = 0;
};

/// Exact extreme values of word length minus CC distance over the ball.
KratGap krat_gap_scan(const WordBall& ball, const PanelAtlas& atlas);

/// G*(p) = {v : |v| + |v^-1 p| = |p|}, sorted.
std::vector<HeisPoint> geodesic_point_set(const WordBall& ball, const HeisPoint& p);

/// Points of the lexicographically-least geodesic word for p (generator
/// order as in the ball), from the identity to p.
std::vector<HeisPoint> canonical_geodesic(const WordBall& ball, const HeisPoint& p);

/// max over v in G*(p) of the word distance from v to the canonical
/// geodesic. Distances beyond the ball radius are counted as radius + 1,
/// which keeps the value a lower bound.
std::int64_t spread(const WordBall& ball, const HeisPoint& p);

}  // namespace heiscc
