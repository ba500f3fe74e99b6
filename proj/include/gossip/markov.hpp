#pragma once

#include <stdexcept>

#include "gossip/types.hpp"

namespace gossip {

struct NotPrimitive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DisconnectedGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boolean-powering primitivity test (positive pattern of Z^k for some
// k up to the Wielandt exponent (n-1)^2 + 1).
bool is_primitive(const Matrix& Z, double positive_tol = 1e-15);

struct StationaryDistribution {
  Vector pi;
  double residual = 0.0;  // max-norm of pi'Z - pi'
};

// Left fixed point of a row-stochastic primitive matrix by direct linear
// solve with a normalization row. Throws NotPrimitive.
StationaryDistribution stationary(const Matrix& Z);

struct FundamentalMatrix {
  Matrix Y;  // (I - Z + Z_inf)^{-1} - Z_inf, row sums zero
  Matrix Z;
  Vector pi;
};

FundamentalMatrix fundamental_matrix(const Matrix& Z, const Vector& pi);

struct PassageTimes {
  Matrix m;            // mean first passage times, zero diagonal
  Vector return_time;  // mean first return times, 1/pi
};

PassageTimes mean_first_passage(const FundamentalMatrix& fm);

struct SpectralInfo {
  Vector eigenvalues;  // full real spectrum, sorted descending
  double lambda2 = 0.0;
  double spectral_gap = 0.0;  // 1 - lambda2
};

SpectralInfo second_eigenvalue(const Matrix& T);

struct SingularIminusDY : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stationary distribution of T + D through the exact perturbation
// identity rho' = pi' D Y (I - D Y)^{-1} around the uniform distribution
// of the doubly stochastic T.
StationaryDistribution perturbed_stationary(const Matrix& T, const Matrix& D);

// Mean commute time m_ab + m_ba of the random walk induced by the
// symmetric weight matrix, computed electrically as total weight times
// the effective resistance between a and b (edge conductances are the
// off-diagonal weights; self-loops only contribute to the total weight).
double commute_time_electrical(const Matrix& weights, int a, int b);

}  // namespace gossip
