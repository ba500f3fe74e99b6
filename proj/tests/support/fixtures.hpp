// Deterministic fixtures shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gossip/network.hpp"

namespace fixtures {

using gossip::InteractionEdge;
using gossip::SocialNetwork;

inline SocialNetwork dyad() {
  return SocialNetwork(2, 0.5,
                       {{0, 1, 1.0, 0.0, 1.0, 0.0}, {1, 0, 1.0, 0.0, 1.0, 0.0}});
}

// Agent 1 influences agent 0 with certainty when they meet; consensus
// weights are (1/3, 2/3).
inline SocialNetwork forceful_dyad(double epsilon = 0.5) {
  return SocialNetwork(2, epsilon,
                       {{0, 1, 1.0, 1.0, 0.0, 0.0}, {1, 0, 1.0, 0.0, 1.0, 0.0}});
}

struct RandomNetworkOptions {
  int min_n = 3;
  int max_n = 12;
  int max_forceful = 2;       // vertex-disjoint forceful links
  bool with_gamma = true;
  bool forceful = true;
};

// Random connected network satisfying the model assumptions: spanning
// tree plus extra edges, row-normalized random meeting weights, optional
// disagreement mass, and vertex-disjoint forceful links.
inline SocialNetwork random_valid_network(std::uint64_t seed,
                                          RandomNetworkOptions opt = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const int n = std::uniform_int_distribution<int>(opt.min_n, opt.max_n)(rng);

  std::set<std::pair<int, int>> edge_set;
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edge_set.insert(std::minmax(u, v));
  }
  const int extras = std::uniform_int_distribution<int>(0, n)(rng);
  for (int k = 0; k < extras; ++k) {
    const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (u != v) edge_set.insert(std::minmax(u, v));
  }

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edge_set) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  gossip::Matrix p = gossip::Matrix::Zero(n, n);
  gossip::Matrix alpha = gossip::Matrix::Zero(n, n);
  gossip::Matrix beta = gossip::Matrix::Zero(n, n);
  gossip::Matrix gamma = gossip::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    std::vector<double> weight(adj[i].size());
    for (std::size_t k = 0; k < adj[i].size(); ++k) total += weight[k] = uniform(0.2, 1.0);
    for (std::size_t k = 0; k < adj[i].size(); ++k) {
      const int j = adj[i][k];
      p(i, j) = weight[k] / total;
      gamma(i, j) = opt.with_gamma && uniform(0.0, 1.0) < 0.5 ? uniform(0.0, 0.3) : 0.0;
      beta(i, j) = 1.0 - gamma(i, j);
    }
  }

  if (opt.forceful) {
    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    std::shuffle(edges.begin(), edges.end(), rng);
    const int wanted = std::uniform_int_distribution<int>(1, opt.max_forceful)(rng);
    std::set<int> used;
    int placed = 0;
    for (auto [u, v] : edges) {
      if (placed == wanted) break;
      if (used.count(u) || used.count(v)) continue;
      used.insert(u);
      used.insert(v);
      int influenced = u, forceful_agent = v;
      if (uniform(0.0, 1.0) < 0.5) std::swap(influenced, forceful_agent);
      const double a = uniform(0.2, 0.6);
      alpha(influenced, forceful_agent) = a;
      beta(influenced, forceful_agent) -= a;
      ++placed;
    }
  }

  return SocialNetwork(uniform(0.1, 0.5), p, alpha, beta, gamma);
}

struct BridgedNetwork {
  SocialNetwork net;
  int bridge_i = 0;  // influenced endpoint when forceful_on_bridge
  int bridge_j = 0;  // forceful endpoint
};

// Two random connected clusters joined by a single bridge edge; the
// forceful link (if any) sits on the bridge, pointing j -> i.
inline BridgedNetwork random_bridged_network(std::uint64_t seed, bool forceful_on_bridge,
                                             int min_cluster = 3, int max_cluster = 6) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const int n1 = std::uniform_int_distribution<int>(min_cluster, max_cluster)(rng);
  const int n2 = std::uniform_int_distribution<int>(min_cluster, max_cluster)(rng);
  const int n = n1 + n2;

  std::set<std::pair<int, int>> edge_set;
  auto build_cluster = [&](int first, int count) {
    for (int v = 1; v < count; ++v) {
      const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
      edge_set.insert(std::minmax(first + u, first + v));
    }
    for (int k = 0; k < count / 2; ++k) {
      const int u = first + std::uniform_int_distribution<int>(0, count - 1)(rng);
      const int v = first + std::uniform_int_distribution<int>(0, count - 1)(rng);
      if (u != v) edge_set.insert(std::minmax(u, v));
    }
  };
  build_cluster(0, n1);
  build_cluster(n1, n2);
  const int left_end = std::uniform_int_distribution<int>(0, n1 - 1)(rng);
  const int right_end = n1 + std::uniform_int_distribution<int>(0, n2 - 1)(rng);
  edge_set.insert({left_end, right_end});

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edge_set) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  gossip::Matrix p = gossip::Matrix::Zero(n, n);
  gossip::Matrix alpha = gossip::Matrix::Zero(n, n);
  gossip::Matrix beta = gossip::Matrix::Zero(n, n);
  gossip::Matrix gamma = gossip::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    std::vector<double> weight(adj[i].size());
    for (std::size_t k = 0; k < adj[i].size(); ++k) total += weight[k] = uniform(0.3, 1.0);
    for (std::size_t k = 0; k < adj[i].size(); ++k) {
      const int j = adj[i][k];
      p(i, j) = weight[k] / total;
      gamma(i, j) = uniform(0.0, 1.0) < 0.4 ? uniform(0.0, 0.25) : 0.0;
      beta(i, j) = 1.0 - gamma(i, j);
    }
  }

  BridgedNetwork out{SocialNetwork(uniform(0.1, 0.5), p, alpha, beta, gamma), left_end,
                     right_end};
  if (forceful_on_bridge) {
    int influenced = left_end, forceful_agent = right_end;
    if (uniform(0.0, 1.0) < 0.5) std::swap(influenced, forceful_agent);
    const double a = uniform(0.2, 0.6);
    alpha(influenced, forceful_agent) = a;
    beta(influenced, forceful_agent) -= a;
    out = BridgedNetwork{SocialNetwork(out.net.epsilon(), p, alpha, beta, gamma),
                         influenced, forceful_agent};
  }
  return out;
}

}  // namespace fixtures
