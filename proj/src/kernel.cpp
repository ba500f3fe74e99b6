#include "gossip/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gossip/network.hpp"

namespace gossip {

Matrix averaging_matrix(int i, int j, int n) {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("averaging_matrix: agent index out of range");
  if (i == j) throw std::invalid_argument("averaging_matrix: i and j must differ");
  Matrix a = Matrix::Identity(n, n);
  a(i, i) = a(j, j) = 0.5;
  a(i, j) = a(j, i) = 0.5;
  return a;
}

Matrix influence_update_matrix(int i, int j, int n, double epsilon) {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("influence_update_matrix: agent index out of range");
  if (i == j) throw std::invalid_argument("influence_update_matrix: i and j must differ");
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw std::invalid_argument("influence_update_matrix: epsilon must lie in (0, 1/2]");
  Matrix m = Matrix::Identity(n, n);
  m(i, i) = epsilon;
  m(i, j) = 1.0 - epsilon;
  return m;
}

Matrix mean_interaction_matrix(const SocialNetwork& net) {
  const int n = net.size();
  const double eps = net.epsilon();
  const Matrix& p = net.meeting();
  const Matrix& a = net.influence_prob();
  const Matrix& b = net.averaging_prob();
  Matrix w = Matrix::Zero(n, n);
  // Off-diagonal mass from both meeting directions; the diagonal absorbs
  // the rest so rows sum to one exactly.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      w(i, j) = (p(i, j) * (b(i, j) / 2.0 + a(i, j) * (1.0 - eps)) +
                 p(j, i) * b(j, i) / 2.0) /
                n;
    }
    w(i, i) = 1.0 - w.row(i).sum();
  }
  return w;
}

InteractionDecomposition decompose(const SocialNetwork& net) {
  const int n = net.size();
  const Matrix& p = net.meeting();
  const Matrix& g = net.disagreement_prob();
  InteractionDecomposition dec;
  dec.W = mean_interaction_matrix(net);
  dec.T = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      dec.T(i, j) =
          (p(i, j) * (1.0 - g(i, j)) / 2.0 + p(j, i) * (1.0 - g(j, i)) / 2.0) / n;
    }
    dec.T(i, i) = 1.0 - dec.T.row(i).sum();
  }
  dec.D = dec.W - dec.T;
  return dec;
}

EtaConstants eta_constants(const SocialNetwork& net) {
  const MeetingDigraph dg = meeting_digraph(net);
  const InteractionDecomposition dec = decompose(net);
  const int n = net.size();

  EtaConstants out;
  out.diameter = dg.diameter;
  out.eta = dec.W.diagonal().minCoeff();
  out.chi = 1.0;
  for (auto [i, j] : dg.links) {
    out.eta = std::min(out.eta, dec.W(i, j));
    out.chi = std::min(out.chi, dec.T(i, j));
  }

  const double contraction = n * std::pow(out.chi, dg.diameter);
  if (contraction > 1.0 + 1e-12) {
    out.degenerate = true;
    out.delta = 0.0;
  } else {
    out.delta = std::pow(std::max(0.0, 1.0 - contraction), 1.0 / dg.diameter);
  }
  return out;
}

}  // namespace gossip
