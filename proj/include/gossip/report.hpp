#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "gossip/network.hpp"

namespace gossip {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisOptions {
  std::optional<Vector> x0;
  int simulate_trials = 0;
  std::optional<std::pair<int, int>> cluster_endpoints;
  bool exact_cuts = false;  // request exact cut minimization where sized for it
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
};

// Full machine-readable analysis: consensus distribution from the direct
// solve and the perturbation identity with their discrepancy, excess
// influence along every applicable exact route, bounds with
// certified/heuristic flags, essential edges, and optional cluster trace
// and simulation blocks. Deterministic for fixed input and seed.
nlohmann::json analyze(const SocialNetwork& network, const AnalysisOptions& options);

nlohmann::json bounds_json(const SocialNetwork& network, bool exact_cuts);
nlohmann::json cluster_json(const SocialNetwork& network, int a, int b, bool exact_cuts);
nlohmann::json simulate_json(const SocialNetwork& network, int trials, std::uint64_t seed,
                             double tolerance);
nlohmann::json validation_json(const ValidationReport& report);

}  // namespace gossip
