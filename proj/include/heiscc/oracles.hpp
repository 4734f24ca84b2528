#pragma once

// Independent numerical and brute-force oracles used to validate the exact
// pipeline. None of these share code paths with the quantities they check
// beyond the atlas data itself.

#include <cstdint>

#include "heiscc/atlas.hpp"

namespace heiscc {

struct McEstimate {
  double volume = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

/// Rejection sampling of the cone over one sign of a quad panel. Samples are
/// split over a fixed number of shards with seeds derived from `seed`, so
/// the estimate does not depend on `threads`.
McEstimate mc_panel_volume(const PanelAtlas& atlas, std::size_t quad_index, std::uint64_t samples, std::uint64_t seed,
                           unsigned threads = 0);

/// Same for side panel k (1-based), both signs.
McEstimate mc_side_volume(const PanelAtlas& atlas, int k, std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

struct DidoReport {
  std::size_t endpoints = 0;
  std::size_t paths = 0;
  std::size_t violations = 0;  ///< paths with balayage > A(endpoint)
  Rational min_slack{0};       ///< min of A(p) - balayage over all paths
};

/// Random unit-length polygonal paths (plus jittered trace paths) to random
/// rational endpoints inside Q, compared exactly against A.
DidoReport dido_random_paths(const PanelAtlas& atlas, std::size_t endpoints, std::size_t paths_per_endpoint, std::uint64_t seed);

struct StaircaseReport {
  std::size_t paths = 0;
  std::size_t endpoints = 0;
  std::size_t violations = 0;  ///< endpoints whose best staircase beats A
  Rational best_at_origin{0};
  Rational best_at_half{0};  ///< endpoint (1/2, 1/2)
};

/// Exhaustive search over unit-length l1 staircases with 8 steps of 1/8.
/// `atlas` must be the l1-square atlas.
StaircaseReport staircase_oracle(const PanelAtlas& atlas);

}  // namespace heiscc
