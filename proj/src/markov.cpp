#include "gossip/markov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace gossip {

namespace {

// Positive-pattern rows packed into 64-bit blocks.
struct BoolMatrix {
  int n = 0;
  int blocks = 0;
  std::vector<std::uint64_t> bits;

  explicit BoolMatrix(int size) : n(size), blocks((size + 63) / 64), bits(size * blocks, 0) {}

  void set(int i, int j) { bits[i * blocks + j / 64] |= std::uint64_t{1} << (j % 64); }

  bool all_ones() const {
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < blocks; ++b) {
        std::uint64_t expected = ~std::uint64_t{0};
        if (b == blocks - 1 && n % 64 != 0) expected = (std::uint64_t{1} << (n % 64)) - 1;
        if ((bits[i * blocks + b] & expected) != expected) return false;
      }
    }
    return true;
  }
};

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (int blk = 0; blk < a.blocks; ++blk) {
      std::uint64_t word = a.bits[i * a.blocks + blk];
      while (word) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        const int j = blk * 64 + bit;
        for (int t = 0; t < c.blocks; ++t)
          c.bits[i * c.blocks + t] |= b.bits[j * b.blocks + t];
      }
    }
  }
  return c;
}

}  // namespace

bool is_primitive(const Matrix& Z, double positive_tol) {
  const int n = static_cast<int>(Z.rows());
  BoolMatrix pattern(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (Z(i, j) > positive_tol) pattern.set(i, j);
  if (pattern.all_ones()) return true;

  // Wielandt: a primitive pattern is all-positive by exponent (n-1)^2 + 1.
  const long bound = static_cast<long>(n - 1) * (n - 1) + 1;
  BoolMatrix power = pattern;
  long exponent = 1;
  while (exponent < bound) {
    power = bool_multiply(power, power);
    exponent *= 2;
    if (power.all_ones()) return true;
  }
  return false;
}

StationaryDistribution stationary(const Matrix& Z) {
  const int n = static_cast<int>(Z.rows());
  if (!is_primitive(Z)) throw NotPrimitive("transition matrix is not primitive");

  // (Z' - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  Matrix system = Z.transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector pi = system.partialPivLu().solve(rhs);
  pi /= pi.sum();

  StationaryDistribution out;
  out.pi = pi;
  out.residual = (Z.transpose() * pi - pi).cwiseAbs().maxCoeff();
  return out;
}

FundamentalMatrix fundamental_matrix(const Matrix& Z, const Vector& pi) {
  const int n = static_cast<int>(Z.rows());
  const Matrix z_inf = Vector::Ones(n) * pi.transpose();
  const Matrix system = Matrix::Identity(n, n) - Z + z_inf;
  Eigen::PartialPivLU<Matrix> lu(system);
  const Matrix inverse = lu.solve(Matrix::Identity(n, n));
  if (!inverse.allFinite())
    throw SingularSystem("I - Z + Z_inf is numerically singular");
  FundamentalMatrix out;
  out.Y = inverse - z_inf;
  out.Z = Z;
  out.pi = pi;
  return out;
}

PassageTimes mean_first_passage(const FundamentalMatrix& fm) {
  const int n = static_cast<int>(fm.Y.rows());
  PassageTimes out;
  out.m = Matrix::Zero(n, n);
  out.return_time = fm.pi.cwiseInverse();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j) out.m(i, j) = (fm.Y(j, j) - fm.Y(i, j)) / fm.pi(j);
  return out;
}

SpectralInfo second_eigenvalue(const Matrix& T) {
  if ((T - T.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw NotSymmetric("matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(T);
  Vector ascending = solver.eigenvalues();
  SpectralInfo out;
  out.eigenvalues = ascending.reverse();
  out.lambda2 = out.eigenvalues(1);
  out.spectral_gap = 1.0 - out.lambda2;
  return out;
}

StationaryDistribution perturbed_stationary(const Matrix& T, const Matrix& D) {
  const int n = static_cast<int>(T.rows());
  const Vector uniform = Vector::Constant(n, 1.0 / n);
  const FundamentalMatrix fm = fundamental_matrix(T, uniform);
  const Matrix dy = D * fm.Y;
  // rho' = pi' DY (I - DY)^{-1}  with pi uniform, solved as a transposed
  // linear system instead of forming the inverse.
  const Matrix system = (Matrix::Identity(n, n) - dy).transpose();
  Eigen::PartialPivLU<Matrix> lu(system);
  const Vector rhs = dy.transpose() * uniform;
  const Vector rho = lu.solve(rhs);
  if (!rho.allFinite()) throw SingularIminusDY("I - DY is numerically singular");

  StationaryDistribution out;
  out.pi = uniform + rho;
  out.pi /= out.pi.sum();
  const Matrix perturbed = T + D;
  out.residual = (perturbed.transpose() * out.pi - out.pi).cwiseAbs().maxCoeff();
  return out;
}

double commute_time_electrical(const Matrix& weights, int a, int b) {
  const int n = static_cast<int>(weights.rows());
  if (a == b) throw std::invalid_argument("commute time needs distinct nodes");

  // connectivity over positive off-diagonal weights
  std::vector<char> seen(n, 0);
  std::vector<int> stack{a};
  seen[a] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v)
      if (v != u && weights(u, v) > 0.0 && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  if (count != n) throw DisconnectedGraph("weight graph is not connected");

  // Ground node b, solve the reduced Laplacian for the potentials of a
  // unit current injected at a; the effective resistance is v(a).
  std::vector<int> keep;
  keep.reserve(n - 1);
  for (int v = 0; v < n; ++v)
    if (v != b) keep.push_back(v);
  Matrix laplacian = Matrix::Zero(n - 1, n - 1);
  for (int r = 0; r < n - 1; ++r) {
    const int u = keep[r];
    double degree = 0.0;
    for (int v = 0; v < n; ++v)
      if (v != u) degree += weights(u, v);
    laplacian(r, r) = degree;
    for (int c = 0; c < n - 1; ++c)
      if (c != r) laplacian(r, c) = -weights(u, keep[c]);
  }
  Vector rhs = Vector::Zero(n - 1);
  const auto a_pos = std::find(keep.begin(), keep.end(), a) - keep.begin();
  rhs(a_pos) = 1.0;
  const Vector potential = laplacian.ldlt().solve(rhs);
  return weights.sum() * potential(a_pos);
}

}  // namespace gossip
