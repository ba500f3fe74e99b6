#include "gossip/cuts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace gossip::cuts {

namespace {

constexpr double kFlowEps = 1e-12;

std::vector<std::vector<int>> offdiag_adjacency(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && w(i, j) > 0.0) adj[i].push_back(j);
  return adj;
}

bool connected_over(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  const auto adj = offdiag_adjacency(w);
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
  return count == n;
}

// Dinic max-flow on an undirected capacity graph.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), iter_(n) {}

  void add_undirected(int u, int v, double capacity) {
    add_arc(u, v, capacity);
    add_arc(v, u, capacity);
  }

  double run(int source, int sink) {
    double total = 0.0;
    while (build_levels(source, sink)) {
      iter_ = head_;
      while (true) {
        double pushed = augment(source, sink, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowEps) break;
        total += pushed;
      }
    }
    return total;
  }

  // Nodes reachable from `source` in the residual graph after run().
  std::vector<int> source_side(int source) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{source}, side;
    seen[source] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      side.push_back(u);
      for (int e = head_[u]; e != -1; e = arcs_[e].next)
        if (arcs_[e].capacity > kFlowEps && !seen[arcs_[e].to]) {
          seen[arcs_[e].to] = 1;
          stack.push_back(arcs_[e].to);
        }
    }
    std::sort(side.begin(), side.end());
    return side;
  }

 private:
  struct Arc {
    int to;
    int next;
    double capacity;
  };

  void add_arc(int u, int v, double capacity) {
    arcs_.push_back({v, head_[u], capacity});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
  }

  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int e = head_[u]; e != -1; e = arcs_[e].next)
        if (arcs_[e].capacity > kFlowEps && level_[arcs_[e].to] == -1) {
          level_[arcs_[e].to] = level_[u] + 1;
          queue.push_back(arcs_[e].to);
        }
    }
    return level_[sink] != -1;
  }

  double augment(int u, int sink, double limit) {
    if (u == sink) return limit;
    for (int& e = iter_[u]; e != -1; e = arcs_[e].next) {
      Arc& arc = arcs_[e];
      if (arc.capacity <= kFlowEps || level_[arc.to] != level_[u] + 1) continue;
      double pushed = augment(arc.to, sink, std::min(limit, arc.capacity));
      if (pushed > kFlowEps) {
        arc.capacity -= pushed;
        arcs_[e ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<Arc> arcs_;
};

double crossing_weight(const Matrix& w, const std::vector<char>& in_side) {
  const int n = static_cast<int>(w.rows());
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    if (in_side[i])
      for (int j = 0; j < n; ++j)
        if (!in_side[j] && j != i) total += w(i, j);
  return total;
}

double normalized_value(int n, double cut, int side_size) {
  return n * cut / (static_cast<double>(side_size) * (n - side_size));
}

std::vector<int> side_vector(const std::vector<char>& in_side) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(in_side.size()); ++i)
    if (in_side[i]) out.push_back(i);
  return out;
}

// Candidate tracker with the deterministic tie-break: value, then side
// size, then lexicographic side order.
struct BestCut {
  double value = std::numeric_limits<double>::infinity();
  double raw = 0.0;
  std::vector<int> side;

  void offer(double candidate_value, double candidate_raw, const std::vector<char>& in_side) {
    constexpr double tie_tol = 1e-12;
    if (candidate_value > value + tie_tol) return;
    std::vector<int> candidate_side = side_vector(in_side);
    if (candidate_value < value - tie_tol ||
        std::pair(candidate_side.size(), candidate_side) < std::pair(side.size(), side)) {
      value = candidate_value;
      raw = candidate_raw;
      side = std::move(candidate_side);
    }
  }
};

// Exhaustive scan over subsets containing `anchor` and excluding
// `excluded` (pass -1 for none). Gray-code order keeps the crossing
// weight update incremental.
BestCut enumerate_cuts(const Matrix& w, int anchor, int excluded) {
  const int n = static_cast<int>(w.rows());
  std::vector<int> free_nodes;
  for (int v = 0; v < n; ++v)
    if (v != anchor && v != excluded) free_nodes.push_back(v);
  const int m = static_cast<int>(free_nodes.size());

  std::vector<char> in_side(n, 0);
  in_side[anchor] = 1;
  double cut = crossing_weight(w, in_side);
  BestCut best;
  best.offer(normalized_value(n, cut, 1), cut, in_side);

  int side_size = 1;
  const std::uint64_t states = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < states; ++k) {
    const int v = free_nodes[std::countr_zero(k)];
    if (in_side[v]) {
      in_side[v] = 0;
      --side_size;
      for (int u = 0; u < n; ++u)
        if (u != v) cut += in_side[u] ? w(v, u) : -w(v, u);
    } else {
      in_side[v] = 1;
      ++side_size;
      for (int u = 0; u < n; ++u)
        if (u != v) cut += in_side[u] ? -w(v, u) : w(v, u);
    }
    if (side_size == n) continue;  // complement empty, not a cut
    best.offer(normalized_value(n, cut, side_size), cut, in_side);
  }
  return best;
}

// Sweep over the ordering induced by the second eigenvector of the
// degree-normalized weight matrix, then a single pass of single-node
// moves. `a`/`b` restrict the admissible cuts when nonnegative.
BestCut spectral_sweep(const Matrix& w, int a, int b) {
  const int n = static_cast<int>(w.rows());
  Vector degree = w.rowwise().sum();
  Vector scale = degree.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const Matrix normalized = scale.asDiagonal() * w * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(normalized);
  Vector fiedler = solver.eigenvectors().col(n - 2);
  for (int i = 0; i < n; ++i)
    if (std::abs(fiedler(i)) > 1e-14) {
      if (fiedler(i) < 0) fiedler = -fiedler;
      break;
    }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (fiedler(x) != fiedler(y)) return fiedler(x) < fiedler(y);
    return x < y;
  });

  BestCut best;
  std::vector<char> in_side(n, 0);
  double cut = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const int v = order[k];
    in_side[v] = 1;
    for (int u = 0; u < n; ++u)
      if (u != v) cut += in_side[u] ? -w(v, u) : w(v, u);
    if (a >= 0) {
      const bool has_a = in_side[a], has_b = in_side[b];
      if (has_a == has_b) continue;
      if (!has_a) {
        // evaluate the complement so that a lands in the reported side
        std::vector<char> fl(n);
        for (int u = 0; u < n; ++u) fl[u] = !in_side[u];
        best.offer(normalized_value(n, cut, n - (k + 1)), cut, fl);
        continue;
      }
    }
    best.offer(normalized_value(n, cut, k + 1), cut, in_side);
  }

  // refinement: move any single node across the cut if that helps
  std::vector<char> side(n, 0);
  for (int v : best.side) side[v] = 1;
  int size = static_cast<int>(best.side.size());
  cut = best.raw;
  for (int v = 0; v < n; ++v) {
    if (a >= 0 && (v == a || v == b)) continue;
    const int new_size = side[v] ? size - 1 : size + 1;
    if (new_size == 0 || new_size == n) continue;
    double delta = 0.0;
    for (int u = 0; u < n; ++u)
      if (u != v) delta += (side[u] == side[v]) ? w(v, u) : -w(v, u);
    const double candidate = normalized_value(n, cut + delta, new_size);
    if (candidate < normalized_value(n, cut, size) - 1e-15) {
      side[v] = !side[v];
      size = new_size;
      cut += delta;
      best.offer(candidate, cut, side);
    }
  }

  // canonical orientation for the unconstrained problem
  if (a < 0 && !best.side.empty() && best.side.front() != 0) {
    std::vector<char> fl(n, 1);
    for (int v : best.side) fl[v] = 0;
    BestCut oriented;
    oriented.offer(best.value, best.raw, fl);
    return oriented;
  }
  return best;
}

std::vector<int> complement_of(int n, const std::vector<int>& side) {
  std::vector<char> in(n, 0);
  for (int v : side) in[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

}  // namespace

bool WeightedGraph::connected() const { return connected_over(w); }

WeightedGraph WeightedGraph::from_social_matrix(const Matrix& T) {
  WeightedGraph g;
  g.w = T;
  g.labels.resize(T.rows());
  std::iota(g.labels.begin(), g.labels.end(), 0);
  return g;
}

WeightedGraph WeightedGraph::from_edges(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
  WeightedGraph g;
  g.w = Matrix::Zero(n, n);
  for (auto [u, v, weight] : edges) {
    g.w(u, v) += weight;
    if (u != v) g.w(v, u) += weight;
  }
  g.labels.resize(n);
  std::iota(g.labels.begin(), g.labels.end(), 0);
  return g;
}

CutResult min_relative_cut(const WeightedGraph& g, int a, int b) {
  const int n = g.size();
  if (a == b) throw std::invalid_argument("relative cut needs distinct endpoints");
  if (!g.connected()) throw Disconnected("graph is not connected");

  MaxFlow flow(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.w(i, j) > 0.0) flow.add_undirected(i, j, g.w(i, j));
  flow.run(a, b);

  CutResult out;
  out.side = flow.source_side(a);
  std::vector<char> in_side(n, 0);
  for (int v : out.side) in_side[v] = 1;
  out.raw_value = crossing_weight(g.w, in_side);
  out.normalized_value =
      normalized_value(n, out.raw_value, static_cast<int>(out.side.size()));
  out.mode = CutMode::Exact;
  return out;
}

std::pair<double, double> commute_bounds_relative(const WeightedGraph& g, int a, int b) {
  const double c = min_relative_cut(g, a, b).raw_value;
  const double n = g.size();
  return {n / c, n * n / c};
}

CutResult min_normalized_cut(const WeightedGraph& g, CutMode mode) {
  const int n = g.size();
  if (!g.connected()) throw Disconnected("graph is not connected");
  CutResult out;
  out.mode = mode;
  if (mode == CutMode::Exact) {
    if (n > kMaxExactNodes)
      throw TooLargeForExact("exact normalized cut limited to " +
                             std::to_string(kMaxExactNodes) + " nodes");
    BestCut best = enumerate_cuts(g.w, 0, -1);
    out.side = best.side;
    out.raw_value = best.raw;
    out.normalized_value = best.value;
  } else {
    BestCut best = spectral_sweep(g.w, -1, -1);
    out.side = best.side;
    out.raw_value = best.raw;
    out.normalized_value = best.value;
  }
  return out;
}

CutResult min_normalized_relative_cut(const WeightedGraph& g, int a, int b, CutMode mode) {
  const int n = g.size();
  if (a == b) throw std::invalid_argument("relative cut needs distinct endpoints");
  if (!g.connected()) throw Disconnected("graph is not connected");
  CutResult out;
  out.mode = mode;
  if (mode == CutMode::Exact) {
    if (n > kMaxExactNodes)
      throw TooLargeForExact("exact normalized cut limited to " +
                             std::to_string(kMaxExactNodes) + " nodes");
    BestCut best = enumerate_cuts(g.w, a, b);
    out.side = best.side;
    out.raw_value = best.raw;
    out.normalized_value = best.value;
  } else {
    BestCut best = spectral_sweep(g.w, a, b);
    out.side = best.side;
    out.raw_value = best.raw;
    out.normalized_value = best.value;
  }
  return out;
}

double commute_bound_normalized(const WeightedGraph& g, const CutResult& rho_ab) {
  const double n = g.size();
  return 3.0 * n * std::log(n) / rho_ab.normalized_value;
}

WeightedGraph restrict_to(const WeightedGraph& g, const std::vector<int>& nodes) {
  const int n = g.size();
  if (nodes.size() < 2) throw std::invalid_argument("restriction needs at least 2 nodes");
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.front() < 0 || sorted.back() >= n)
    throw std::invalid_argument("restriction nodes must be distinct and in range");

  const int m = static_cast<int>(sorted.size());
  WeightedGraph sub;
  sub.w = Matrix::Zero(m, m);
  sub.labels.resize(m);
  for (int r = 0; r < m; ++r) sub.labels[r] = g.labels[sorted[r]];

  std::vector<char> keep(n, 0);
  for (int v : sorted) keep[v] = 1;
  for (int r = 0; r < m; ++r) {
    const int u = sorted[r];
    double folded = g.w(u, u);
    for (int v = 0; v < n; ++v)
      if (v != u && !keep[v]) folded += g.w(u, v);
    sub.w(r, r) = folded;
    for (int c = 0; c < m; ++c)
      if (c != r) sub.w(r, c) = g.w(u, sorted[c]);
  }
  if (!sub.connected()) throw SubgraphDisconnected("restricted subgraph is not connected");
  return sub;
}

double commute_bound_subgraph(const WeightedGraph& g, int a, int b,
                              const std::vector<int>& nodes, CutMode mode) {
  WeightedGraph sub = restrict_to(g, nodes);
  int a_local = -1, b_local = -1;
  for (int r = 0; r < sub.size(); ++r) {
    if (sub.labels[r] == g.labels[a]) a_local = r;
    if (sub.labels[r] == g.labels[b]) b_local = r;
  }
  if (a_local < 0 || b_local < 0)
    throw std::invalid_argument("subgraph must contain both endpoints");
  const CutResult rho = min_normalized_relative_cut(sub, a_local, b_local, mode);
  return 3.0 * g.size() * std::log(static_cast<double>(sub.size())) / rho.normalized_value;
}

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

// Crossing edges of `side` within the subgraph spanned by `ambient`,
// expressed in original labels.
EdgeSet boundary_edges(const WeightedGraph& g, const std::vector<int>& ambient_labels,
                       const std::vector<int>& side_labels) {
  std::set<int> ambient(ambient_labels.begin(), ambient_labels.end());
  std::set<int> side(side_labels.begin(), side_labels.end());
  EdgeSet out;
  for (int u = 0; u < g.size(); ++u) {
    if (!ambient.count(g.labels[u]) || !side.count(g.labels[u])) continue;
    for (int v = 0; v < g.size(); ++v) {
      if (v == u || g.w(u, v) <= 0.0) continue;
      if (!ambient.count(g.labels[v]) || side.count(g.labels[v])) continue;
      out.insert(std::minmax(g.labels[u], g.labels[v]));
    }
  }
  return out;
}

}  // namespace

ClusterTrace cluster_bound(const WeightedGraph& g, int a, int b, CutMode mode) {
  if (a == b) throw std::invalid_argument("cluster bound needs distinct endpoints");
  if (!g.connected()) throw Disconnected("graph is not connected");
  const double n0 = g.size();

  ClusterTrace trace;
  trace.mode = CutMode::Exact;
  WeightedGraph current = g;
  int a_label = g.labels[a];
  int b_label = g.labels[b];

  while (true) {
    const CutMode step_mode =
        (mode == CutMode::Exact && current.size() <= kMaxExactNodes) ? CutMode::Exact
                                                                     : CutMode::Heuristic;
    if (step_mode == CutMode::Heuristic) trace.mode = CutMode::Heuristic;
    const CutResult cut = min_normalized_cut(current, step_mode);

    ClusterIteration iter;
    iter.subgraph_nodes = current.labels;
    std::sort(iter.subgraph_nodes.begin(), iter.subgraph_nodes.end());
    iter.rho = cut.normalized_value;
    for (int v : cut.side) iter.cut_side.push_back(current.labels[v]);
    std::sort(iter.cut_side.begin(), iter.cut_side.end());
    iter.bound = 3.0 * n0 * std::log(static_cast<double>(current.size())) / iter.rho;

    std::vector<char> in_side(current.size(), 0);
    for (int v : cut.side) in_side[v] = 1;
    int a_local = -1, b_local = -1;
    for (int r = 0; r < current.size(); ++r) {
      if (current.labels[r] == a_label) a_local = r;
      if (current.labels[r] == b_label) b_local = r;
    }
    const bool a_in = in_side[a_local], b_in = in_side[b_local];

    if (a_in != b_in) {
      iter.separates_endpoints = true;
      trace.iterations.push_back(std::move(iter));
      break;
    }
    trace.iterations.push_back(std::move(iter));
    const std::vector<int> next_local =
        a_in ? cut.side : complement_of(current.size(), cut.side);
    current = restrict_to(current, next_local);
  }

  trace.final_bound = trace.iterations.back().bound;

  // Mark consecutive cuts that share no crossing edge inside the earlier
  // subgraph; on such steps the normalized cut value must strictly rise.
  for (std::size_t k = 0; k + 1 < trace.iterations.size(); ++k) {
    const auto& ambient = trace.iterations[k].subgraph_nodes;
    const EdgeSet first = boundary_edges(g, ambient, trace.iterations[k].cut_side);
    const EdgeSet second = boundary_edges(g, ambient, trace.iterations[k + 1].cut_side);
    bool overlap = false;
    for (const auto& e : second)
      if (first.count(e)) {
        overlap = true;
        break;
      }
    trace.iterations[k].disjoint_with_next = !overlap;
  }
  return trace;
}

}  // namespace gossip::cuts
