#pragma once

#include "gossip/network.hpp"
#include "gossip/types.hpp"

namespace gossip {

// Single-meeting update matrices. Rows act on the belief vector from the
// left: x(k+1) = W x(k).

// Pairwise averaging: rows i and j both become the 50/50 mix of e_i, e_j.
Matrix averaging_matrix(int i, int j, int n);

// Influence of j over i: row i becomes epsilon*e_i + (1-epsilon)*e_j,
// row j stays the identity row.
Matrix influence_update_matrix(int i, int j, int n, double epsilon);

// Expectation of the per-slot update matrix, built from the closed-form
// entry expressions (one pass over the supported pairs).
Matrix mean_interaction_matrix(const SocialNetwork& network);

// Splits the mean interaction matrix into the doubly stochastic social
// network component T and the zero-row-sum influence component D.
struct InteractionDecomposition {
  Matrix W;  // mean interaction matrix, W = T + D
  Matrix T;  // symmetric, doubly stochastic
  Matrix D;  // rows sum to zero; zero without forceful links
};

InteractionDecomposition decompose(const SocialNetwork& network);

// Scalar constants controlling the contraction estimates: eta is the
// smallest supported entry of W, chi the smallest supported entry of T,
// and delta = (1 - n*chi^d)^(1/d) with d the meeting-digraph diameter.
struct EtaConstants {
  double eta = 0.0;
  double chi = 0.0;
  double delta = 0.0;
  int diameter = 0;
  bool degenerate = false;  // n*chi^d > 1; delta reported as 0
};

EtaConstants eta_constants(const SocialNetwork& network);

}  // namespace gossip
