#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gossip/network.hpp"
#include "gossip/types.hpp"

namespace gossip {

struct OverlappingForcefulEdges : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotEssential : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deviation of each agent's consensus weight from the uniform benchmark.
// Components sum to zero.
struct ExcessInfluence {
  Vector excess;  // pi_bar - e/n
};

// Expected gap between the consensus belief and the average of the
// initial beliefs, for a given initial vector.
double consensus_gap(const ExcessInfluence& ei, const Vector& x0);

// Direct route: stationary distribution of the mean interaction matrix.
ExcessInfluence excess_influence_exact(const SocialNetwork& network);

// Passage-time route: the same quantity written through mean first
// passage times of the social network chain. The consensus weights enter
// the formula, so this is an identity used for cross-checking, not an
// independent estimator.
ExcessInfluence excess_influence_mfpt(const SocialNetwork& network);

// Closed form free of the consensus weights, valid when the undirected
// edges carrying forceful links are pairwise vertex-disjoint. Throws
// OverlappingForcefulEdges otherwise.
ExcessInfluence excess_influence_disjoint(const SocialNetwork& network);

struct Bridge {
  int i = 0;
  int j = 0;
  int side_i_size = 0;
  int side_j_size = 0;
  std::vector<int> side_i;  // component containing i after removal
};

struct EssentialEdgeReport {
  std::vector<Bridge> bridges;
};

// All bridges of the undirected graph induced by T, with the component
// split each removal produces.
EssentialEdgeReport essential_edges(const SocialNetwork& network);

struct EdgePassage {
  double m_ij = 0.0;
  double m_ji = 0.0;
};

// Passage times across a bridge {i,j}: m_ij = |N(i,j)| / T_ij. Throws
// NotEssential when the edge is not a bridge of the T graph.
EdgePassage essential_edge_passage(const SocialNetwork& network, int i, int j);

// Exact excess influence when the single forceful link sits on a bridge:
// piecewise constant on the two components. Throws NotApplicable.
ExcessInfluence essential_edge_excess(const SocialNetwork& network);

struct Bound {
  double value = 0.0;
  bool vacuous = false;    // contraction constant left the valid range
  bool certified = true;   // false when built from a heuristic cut value
};

// Max-norm bound from the contraction constant delta.
Bound bound_delta(const SocialNetwork& network);
// 2-norm bound from the spectral gap of T.
Bound bound_l2(const SocialNetwork& network);
// Bound on |E[consensus] - initial average| for a given x(0).
Bound bound_gap(const SocialNetwork& network, const Vector& x0);
// Max-norm bound from the minimum normalized cut value rho of the T
// chain; certified only if rho came from exact minimization.
Bound bound_conductance(const SocialNetwork& network, double rho, bool rho_exact);

struct BoundsReport {
  Bound delta_bound;
  Bound l2_bound;
  std::optional<Bound> conductance_bound;  // absent when rho not supplied
  double actual_inf_norm = 0.0;            // ||pi_bar - e/n||_inf
  double actual_l2_norm = 0.0;
};

BoundsReport bounds_report(const SocialNetwork& network,
                           std::optional<std::pair<double, bool>> rho = std::nullopt);

}  // namespace gossip
