#pragma once

#include <cstdint>
#include <vector>

#include "gossip/network.hpp"

namespace gossip::gen {

// Self-weight used by the bundled two-cluster fixtures. Calibrated so the
// resulting consensus distributions reproduce the reference values for
// both fixture variants; see docs in README and the fixture tests.
inline constexpr double kTwoClustersEpsilon = 0.1;

struct ForcefulSpec {
  int source = 0;  // influencing agent
  int target = 0;  // influenced agent
  double alpha = 0.0;
};

// Builds a network over an undirected simple graph with meeting
// probabilities inversely proportional to the degree of the recognized
// agent, beta = 1 everywhere, then applies the forceful links (alpha set
// on the ordered pair, beta reduced accordingly).
SocialNetwork from_undirected_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                    double epsilon,
                                    const std::vector<ForcefulSpec>& forceful = {});

SocialNetwork complete(int n, double epsilon = 0.5,
                       const std::vector<ForcefulSpec>& forceful = {});

SocialNetwork ring(int n, double epsilon = 0.5,
                   const std::vector<ForcefulSpec>& forceful = {});

// Two complete graphs of n1 nodes each, joined by a path of n2 nodes
// (a single edge when n2 = 0). Nodes 0..n1-1 form the left bell.
SocialNetwork barbell(int n1, int n2, double epsilon = 0.5,
                      const std::vector<ForcefulSpec>& forceful = {});

// Two 3-cliques {0,1,2} and {3,4,5} bridged by edge {2,3}, with a single
// forceful link of alpha = 1/2. Variant 'a' puts the link over the bridge
// (2 influences 3); variant 'b' puts it inside the left cluster
// (1 influences 0).
SocialNetwork two_clusters(char variant, double epsilon = kTwoClustersEpsilon);

// Random connected simple k-regular graph via the pairing model,
// deterministic for a given seed.
SocialNetwork random_regular(int n, int degree, std::uint64_t seed, double epsilon = 0.5,
                             const std::vector<ForcefulSpec>& forceful = {});

}  // namespace gossip::gen
