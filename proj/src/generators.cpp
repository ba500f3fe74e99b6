#include "gossip/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace gossip::gen {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw BadParams("epsilon must lie in (0, 1/2]");
}

std::vector<std::pair<int, int>> clique_edges(int first, int count) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < count; ++a)
    for (int b = a + 1; b < count; ++b) out.emplace_back(first + a, first + b);
  return out;
}

}  // namespace

SocialNetwork from_undirected_edges(int n, const std::vector<std::pair<int, int>>& und,
                                    double epsilon,
                                    const std::vector<ForcefulSpec>& forceful) {
  check_epsilon(epsilon);
  if (n < 2) throw BadParams("agent count must be at least 2");
  std::vector<std::vector<int>> adj(n);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : und) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw BadParams("bad undirected edge (" + std::to_string(u) + "," +
                      std::to_string(v) + ")");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<InteractionEdge> edges;
  for (int i = 0; i < n; ++i) {
    if (adj[i].empty()) throw BadParams("agent " + std::to_string(i) + " has no neighbours");
    for (int j : adj[i]) edges.push_back({i, j, 1.0 / adj[i].size(), 0.0, 1.0, 0.0});
  }
  SocialNetwork net(n, epsilon, edges);

  if (forceful.empty()) return net;
  Matrix p = net.meeting();
  Matrix alpha = net.influence_prob();
  Matrix beta = net.averaging_prob();
  Matrix gamma = net.disagreement_prob();
  for (const auto& f : forceful) {
    if (f.target < 0 || f.target >= n || f.source < 0 || f.source >= n)
      throw BadParams("forceful link index out of range");
    if (!(f.alpha > 0.0 && f.alpha <= 1.0)) throw BadParams("forceful alpha must be in (0,1]");
    if (p(f.target, f.source) <= 0.0)
      throw BadParams("forceful link requires a meeting edge from " +
                      std::to_string(f.target) + " to " + std::to_string(f.source));
    if (alpha(f.target, f.source) != 0.0)
      throw BadParams("duplicate forceful link on the same ordered pair");
    alpha(f.target, f.source) = f.alpha;
    beta(f.target, f.source) -= f.alpha;
    if (beta(f.target, f.source) < 0.0)
      throw BadParams("forceful alpha exceeds available averaging probability");
  }
  return SocialNetwork(epsilon, p, alpha, beta, gamma);
}

SocialNetwork complete(int n, double epsilon, const std::vector<ForcefulSpec>& forceful) {
  if (n < 2) throw BadParams("complete graph needs n >= 2");
  return from_undirected_edges(n, clique_edges(0, n), epsilon, forceful);
}

SocialNetwork ring(int n, double epsilon, const std::vector<ForcefulSpec>& forceful) {
  if (n < 3) throw BadParams("ring needs n >= 3");
  std::vector<std::pair<int, int>> und;
  for (int i = 0; i < n; ++i) und.emplace_back(i, (i + 1) % n);
  return from_undirected_edges(n, und, epsilon, forceful);
}

SocialNetwork barbell(int n1, int n2, double epsilon,
                      const std::vector<ForcefulSpec>& forceful) {
  if (n1 < 2 || n2 < 0) throw BadParams("barbell needs n1 >= 2 and n2 >= 0");
  const int n = 2 * n1 + n2;
  auto und = clique_edges(0, n1);
  auto right = clique_edges(n1 + n2, n1);
  und.insert(und.end(), right.begin(), right.end());
  // path from the left attachment node through the n2 path nodes
  int prev = n1 - 1;
  for (int k = 0; k < n2; ++k) {
    und.emplace_back(prev, n1 + k);
    prev = n1 + k;
  }
  und.emplace_back(prev, n1 + n2);
  return from_undirected_edges(n, und, epsilon, forceful);
}

SocialNetwork two_clusters(char variant, double epsilon) {
  std::vector<ForcefulSpec> forceful;
  if (variant == 'a')
    forceful.push_back({2, 3, 0.5});  // over the bridge
  else if (variant == 'b')
    forceful.push_back({1, 0, 0.5});  // inside the left cluster
  else
    throw BadParams("two-clusters variant must be 'a' or 'b'");
  return barbell(3, 0, epsilon, forceful);
}

SocialNetwork random_regular(int n, int degree, std::uint64_t seed, double epsilon,
                             const std::vector<ForcefulSpec>& forceful) {
  if (degree < 2 || degree >= n || (n * degree) % 2 != 0)
    throw BadParams("k-regular graph needs 2 <= k < n and n*k even");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    // incremental stub matching: draw legal stub pairs until none remain,
    // restarting on dead ends
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * degree);
    for (int v = 0; v < n; ++v)
      for (int d = 0; d < degree; ++d) stubs.push_back(v);

    std::set<std::pair<int, int>> edge_set;
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      int tries = 0;
      while (true) {
        if (++tries > 200) {
          stuck = true;
          break;
        }
        const std::size_t x = rng() % stubs.size();
        const std::size_t y = rng() % stubs.size();
        if (x == y) continue;
        const int u = stubs[x], v = stubs[y];
        if (u == v || edge_set.count(std::minmax(u, v))) continue;
        edge_set.insert(std::minmax(u, v));
        const std::size_t hi = std::max(x, y), lo = std::min(x, y);
        stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(hi));
        stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(lo));
        break;
      }
    }
    if (stuck) continue;

    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edge_set) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    if (count != n) continue;

    std::vector<std::pair<int, int>> und(edge_set.begin(), edge_set.end());
    return from_undirected_edges(n, und, epsilon, forceful);
  }
  throw BadParams("failed to sample a connected simple regular graph");
}

}  // namespace gossip::gen
