#pragma once

#include <stdexcept>
#include <vector>

#include "gossip/types.hpp"

namespace gossip::cuts {

struct Disconnected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubgraphDisconnected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooLargeForExact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive normalized-cut minimization enumerates 2^(n-1) subsets;
// beyond this size only the heuristic mode is allowed.
inline constexpr int kMaxExactNodes = 22;

// Symmetric nonnegative edge weights, self-loops included. Graphs derived
// from a social network matrix have per-node totals equal to one, so the
// induced walk has a uniform stationary distribution; normalized cut
// values below use that node-count normalization throughout.
struct WeightedGraph {
  Matrix w;
  std::vector<int> labels;  // original node ids, identity by default

  int size() const { return static_cast<int>(w.rows()); }
  double total_weight() const { return w.sum(); }
  bool connected() const;

  static WeightedGraph from_social_matrix(const Matrix& T);
  static WeightedGraph from_edges(int n,
                                  const std::vector<std::tuple<int, int, double>>& edges);
};

enum class CutMode { Exact, Heuristic };

struct CutResult {
  std::vector<int> side;          // S, local node indices, sorted
  double raw_value = 0.0;         // sum of weights crossing the cut
  double normalized_value = 0.0;  // n * raw / (|S| * |S^c|)
  CutMode mode = CutMode::Exact;
};

// Smallest total weight separating a from b, via max-flow with the edge
// weights as capacities. The reported side is the a-side of a minimum cut.
CutResult min_relative_cut(const WeightedGraph& g, int a, int b);

// Commute-time sandwich n/c_ab <= m_ab + m_ba <= n^2/c_ab for graphs with
// per-node weight one.
std::pair<double, double> commute_bounds_relative(const WeightedGraph& g, int a, int b);

// Minimum normalized cut value over all proper subsets. Exact mode
// enumerates subsets containing node 0 (ties broken by smaller side then
// lexicographic order); heuristic mode sweeps the ordering induced by the
// second eigenvector of the normalized weight matrix and refines by
// single-node moves, yielding an upper bound on the true value.
CutResult min_normalized_cut(const WeightedGraph& g, CutMode mode);

// Same restricted to cuts with a in S and b outside.
CutResult min_normalized_relative_cut(const WeightedGraph& g, int a, int b, CutMode mode);

// Commute bound 3 n log n / rho_ab given a normalized relative cut value.
double commute_bound_normalized(const WeightedGraph& g, const CutResult& rho_ab);

// Subgraph with respect to S: weights kept inside S, boundary mass folded
// into the self-loops so per-node totals are preserved.
WeightedGraph restrict_to(const WeightedGraph& g, const std::vector<int>& nodes);

// Theorem-style bound 3 n log|S| / rho_ab(S) computed on the restricted
// subgraph; a and b are indices into the original graph.
double commute_bound_subgraph(const WeightedGraph& g, int a, int b,
                              const std::vector<int>& nodes, CutMode mode);

struct ClusterIteration {
  std::vector<int> subgraph_nodes;  // S_k in original labels
  double rho = 0.0;                 // minimum normalized cut value of S_k
  std::vector<int> cut_side;        // minimizing side, original labels
  double bound = 0.0;               // 3 n log|S_k| / rho_k
  bool separates_endpoints = false;
  // Next iteration's cut shares no crossing edge with this one, measured
  // inside this iteration's subgraph.
  bool disjoint_with_next = false;
};

struct ClusterTrace {
  std::vector<ClusterIteration> iterations;
  double final_bound = 0.0;
  CutMode mode = CutMode::Exact;
};

// Recursive bisection toward the pair (a, b): repeatedly take the minimum
// normalized cut of the current subgraph, descend into whichever side
// still contains both endpoints, and stop when the optimal cut separates
// them. Mode selects exact or heuristic cut minimization throughout.
ClusterTrace cluster_bound(const WeightedGraph& g, int a, int b, CutMode mode);

}  // namespace gossip::cuts
