#pragma once

// Invariant suite: every property listed for the geometry, atlas, metric,
// volume, lattice and counting layers, run against one generating set.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heiscc/lattice.hpp"

namespace heiscc {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int radius = 16;                         ///< BFS radius
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
  std::size_t mem_budget = default_mem_budget();
  std::uint64_t mc_samples = 10'000'000;   ///< per panel; 0 skips the Monte Carlo gate
  double mc_tolerance = 0.005;             ///< relative
  std::size_t dido_endpoints = 100;
  std::size_t dido_paths = 1000;
  int brute_force_radius = 8;              ///< column counts vs point-by-point
  bool measure_convergence = true;         ///< standard generators only
};

/// Runs the suite; `progress` (optional) sees each result as it completes.
std::vector<CheckResult> verify_all(const GenSet& gens, const VerifyOptions& opt,
                                    const std::function<void(const CheckResult&)>& progress = {});

}  // namespace heiscc
