#include "gossip/influence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "gossip/kernel.hpp"
#include "gossip/markov.hpp"

namespace gossip {

namespace {

std::vector<std::vector<int>> social_graph_adjacency(const Matrix& T) {
  const int n = static_cast<int>(T.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && T(i, j) > 0.0) adj[i].push_back(j);
  return adj;
}

// Component of `start` in the T graph with the edge {u,v} removed.
std::vector<int> component_without_edge(const std::vector<std::vector<int>>& adj, int start,
                                        int u, int v) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start}, members;
  seen[start] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    members.push_back(x);
    for (int y : adj[x]) {
      if ((x == u && y == v) || (x == v && y == u)) continue;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

struct OrderedForcefulPair {
  int i;  // influenced agent
  int j;  // forceful agent
};

std::vector<OrderedForcefulPair> ordered_forceful_pairs(const SocialNetwork& net) {
  std::vector<OrderedForcefulPair> out;
  for (const auto& link : net.forceful_links()) out.push_back({link.target, link.source});
  return out;
}

}  // namespace

double consensus_gap(const ExcessInfluence& ei, const Vector& x0) {
  return ei.excess.dot(x0);
}

ExcessInfluence excess_influence_exact(const SocialNetwork& net) {
  const Matrix w = mean_interaction_matrix(net);
  const StationaryDistribution st = stationary(w);
  ExcessInfluence out;
  out.excess = st.pi.array() - 1.0 / net.size();
  return out;
}

ExcessInfluence excess_influence_mfpt(const SocialNetwork& net) {
  const int n = net.size();
  const double eps = net.epsilon();
  const InteractionDecomposition dec = decompose(net);
  const Vector pi_bar = stationary(dec.W).pi;
  const Vector uniform = Vector::Constant(n, 1.0 / n);
  const Matrix m = mean_first_passage(fundamental_matrix(dec.T, uniform)).m;

  ExcessInfluence out;
  out.excess = Vector::Zero(n);
  for (const auto& [i, j] : ordered_forceful_pairs(net)) {
    const double weight = net.meeting()(i, j) * net.influence_prob()(i, j);
    const double mix = (1.0 - 2.0 * eps) * pi_bar(i) + pi_bar(j);
    for (int k = 0; k < n; ++k)
      out.excess(k) += weight * mix * (m(i, k) - m(j, k)) / (2.0 * n * n);
  }
  return out;
}

ExcessInfluence excess_influence_disjoint(const SocialNetwork& net) {
  const int n = net.size();
  const double eps = net.epsilon();
  const auto pairs = ordered_forceful_pairs(net);

  std::vector<std::pair<int, int>> edges;  // undirected forceful edges, a < b
  for (const auto& [i, j] : pairs) {
    const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    if (std::find(edges.begin(), edges.end(), key) == edges.end()) edges.push_back(key);
  }
  std::set<int> touched;
  for (const auto& [u, v] : edges) {
    if (touched.count(u) || touched.count(v))
      throw OverlappingForcefulEdges("forceful edges share an agent");
    touched.insert(u);
    touched.insert(v);
  }

  const InteractionDecomposition dec = decompose(net);
  const Vector uniform = Vector::Constant(n, 1.0 / n);
  const Matrix m = mean_first_passage(fundamental_matrix(dec.T, uniform)).m;
  const Matrix& p = net.meeting();
  const Matrix& a = net.influence_prob();

  // Each forceful edge {u,v} perturbs the chain by a rank-one block
  // w_e (e_v - e_u)'. The excess influence sums the geometric series of
  // these blocks through the fundamental matrix; passage-time differences
  // stand in for the fundamental-matrix rows. For a single edge this
  // collapses to the scalar form
  //   p a (1-eps) (m_ik - m_jk) / (n^3 (1 - zeta/n^2)),
  // with zeta the edge's contraction scalar computed below.
  const int count = static_cast<int>(edges.size());
  ExcessInfluence out;
  out.excess = Vector::Zero(n);
  if (count == 0) return out;

  // row e of `rows`: (m_{u k} - m_{v k})/n for edge e = {u,v}
  Matrix rows(count, n);
  Matrix blocks = Matrix::Zero(n, count);  // column e: w_e
  for (int e = 0; e < count; ++e) {
    const auto [u, v] = edges[e];
    for (int k = 0; k < n; ++k) rows(e, k) = (m(u, k) - m(v, k)) / n;
    // ordered pair (i=u, j=v) acts along +(e_v - e_u), (i=v, j=u) along the negative
    if (a(u, v) > 0.0) {
      const double scale = p(u, v) * a(u, v) / n;
      blocks(u, e) += scale * (0.5 - eps);
      blocks(v, e) += scale * 0.5;
    }
    if (a(v, u) > 0.0) {
      const double scale = p(v, u) * a(v, u) / n;
      blocks(v, e) -= scale * (0.5 - eps);
      blocks(u, e) -= scale * 0.5;
    }
  }
  const Matrix small = rows * blocks;  // count x count
  const Eigen::RowVectorXd mass = Eigen::RowVectorXd::Ones(n) * blocks;
  const Matrix system = Matrix::Identity(count, count) - small;
  const Eigen::RowVectorXd coef =
      system.transpose().partialPivLu().solve(mass.transpose()).transpose();
  out.excess = (coef * rows).transpose() / n;
  return out;
}

EssentialEdgeReport essential_edges(const SocialNetwork& net) {
  const Matrix T = decompose(net).T;
  const int n = net.size();
  const auto adj = social_graph_adjacency(T);

  // bridge detection, low-link DFS with an explicit stack
  std::vector<int> discovery(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::pair<int, int>> bridge_pairs;
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (discovery[root] != -1) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    discovery[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < adj[u].size()) {
        const int v = adj[u][next++];
        if (discovery[v] == -1) {
          parent[v] = u;
          discovery[v] = low[v] = timer++;
          stack.emplace_back(v, 0);
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], discovery[v]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int up = stack.back().first;
          low[up] = std::min(low[up], low[u]);
          if (low[u] > discovery[up]) bridge_pairs.emplace_back(up, u);
        }
      }
    }
  }

  EssentialEdgeReport report;
  for (auto [u, v] : bridge_pairs) {
    Bridge bridge;
    bridge.i = std::min(u, v);
    bridge.j = std::max(u, v);
    bridge.side_i = component_without_edge(adj, bridge.i, bridge.i, bridge.j);
    bridge.side_i_size = static_cast<int>(bridge.side_i.size());
    bridge.side_j_size = n - bridge.side_i_size;
    report.bridges.push_back(std::move(bridge));
  }
  std::sort(report.bridges.begin(), report.bridges.end(),
            [](const Bridge& a, const Bridge& b) {
              return std::pair(a.i, a.j) < std::pair(b.i, b.j);
            });
  return report;
}

EdgePassage essential_edge_passage(const SocialNetwork& net, int i, int j) {
  const Matrix T = decompose(net).T;
  if (i == j || T(i, j) <= 0.0) throw NotEssential("no social-graph edge between the nodes");
  const auto adj = social_graph_adjacency(T);
  const auto side_i = component_without_edge(adj, i, i, j);
  if (std::binary_search(side_i.begin(), side_i.end(), j))
    throw NotEssential("edge removal does not disconnect the graph");
  EdgePassage out;
  out.m_ij = static_cast<double>(side_i.size()) / T(i, j);
  out.m_ji = static_cast<double>(net.size() - side_i.size()) / T(i, j);
  return out;
}

ExcessInfluence essential_edge_excess(const SocialNetwork& net) {
  const auto pairs = ordered_forceful_pairs(net);
  if (pairs.size() != 1)
    throw NotApplicable("requires exactly one forceful ordered pair");
  const auto [i, j] = pairs.front();

  const Matrix T = decompose(net).T;
  const auto adj = social_graph_adjacency(T);
  const auto side_i = component_without_edge(adj, i, i, j);
  if (std::binary_search(side_i.begin(), side_i.end(), j))
    throw NotApplicable("the forceful edge is not an essential edge");

  const int n = net.size();
  const double eps = net.epsilon();
  const Matrix& p = net.meeting();
  const Matrix& a = net.influence_prob();
  const Matrix& g = net.disagreement_prob();
  const double theta = p(i, j) * a(i, j) /
                       (p(i, j) * (1.0 - g(i, j)) + p(j, i) * (1.0 - g(j, i)));
  const double n_i = static_cast<double>(side_i.size());
  const double n_j = static_cast<double>(n) - n_i;
  // the denominator is the single-edge contraction scalar of the
  // rank-one influence block, written in component sizes
  const double denom = 1.0 - (theta / n) * (n_i - (1.0 - 2.0 * eps) * n_j);
  const double coef = 2.0 / (static_cast<double>(n) * n) * theta * (1.0 - eps) / denom;

  ExcessInfluence out;
  out.excess = Vector::Zero(n);
  for (int k = 0; k < n; ++k) {
    const bool on_side_i = std::binary_search(side_i.begin(), side_i.end(), k);
    out.excess(k) = coef * (on_side_i ? -n_j : n_i);
  }
  return out;
}

Bound bound_delta(const SocialNetwork& net) {
  const EtaConstants constants = eta_constants(net);
  Bound out;
  out.vacuous = constants.degenerate || constants.delta >= 1.0;
  if (!out.vacuous)
    out.value = net.total_influence() / (2.0 * net.size() * (1.0 - constants.delta));
  return out;
}

Bound bound_l2(const SocialNetwork& net) {
  const SpectralInfo spectral = second_eigenvalue(decompose(net).T);
  Bound out;
  out.vacuous = spectral.lambda2 >= 1.0;
  if (!out.vacuous)
    out.value = net.total_influence() / (net.size() * (1.0 - spectral.lambda2));
  return out;
}

Bound bound_gap(const SocialNetwork& net, const Vector& x0) {
  Bound out = bound_delta(net);
  out.value *= x0.cwiseAbs().maxCoeff();
  return out;
}

Bound bound_conductance(const SocialNetwork& net, double rho, bool rho_exact) {
  const int n = net.size();
  Bound out;
  out.certified = rho_exact;
  out.vacuous = !(rho > 0.0);
  if (!out.vacuous)
    out.value = 2.0 * net.total_influence() / n * (1.0 + std::log(n)) / rho;
  return out;
}

BoundsReport bounds_report(const SocialNetwork& net,
                           std::optional<std::pair<double, bool>> rho) {
  BoundsReport report;
  report.delta_bound = bound_delta(net);
  report.l2_bound = bound_l2(net);
  if (rho) report.conductance_bound = bound_conductance(net, rho->first, rho->second);
  const Vector excess = excess_influence_exact(net).excess;
  report.actual_inf_norm = excess.cwiseAbs().maxCoeff();
  report.actual_l2_norm = excess.norm();
  return report;
}

}  // namespace gossip
