#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gossip/types.hpp"

namespace gossip {

struct BadParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotStronglyConnected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One ordered meeting pair: agent i, once recognized, meets agent j with
// probability p. Conditional on the meeting, the outcome is averaging
// (beta), influence of j over i (alpha), or disagreement (gamma).
struct InteractionEdge {
  int i = 0;
  int j = 0;
  double p = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;
};

// Directed influence link: `source` influences `target` without updating
// its own belief. Strength is p[target][source] * alpha[target][source].
struct ForcefulLink {
  int source = 0;
  int target = 0;
  double alpha = 0.0;
  double strength = 0.0;
};

// Immutable model input: agent count, self-weight epsilon, meeting matrix
// and the conditional interaction probabilities. Construction does not
// enforce the model assumptions; use validate() for that, so that broken
// networks can still be represented and diagnosed.
class SocialNetwork {
 public:
  SocialNetwork(int n, double epsilon, const std::vector<InteractionEdge>& edges);
  SocialNetwork(double epsilon, Matrix meeting, Matrix alpha, Matrix beta, Matrix gamma);

  int size() const { return n_; }
  double epsilon() const { return epsilon_; }
  const Matrix& meeting() const { return p_; }
  const Matrix& influence_prob() const { return alpha_; }
  const Matrix& averaging_prob() const { return beta_; }
  const Matrix& disagreement_prob() const { return gamma_; }

  // Sparse edge view, sorted by (i, j); exactly the pairs with p > 0.
  std::vector<InteractionEdge> edges() const;
  std::vector<ForcefulLink> forceful_links() const;
  // sum over all ordered pairs of p_ij * alpha_ij
  double total_influence() const;
  bool has_forceful() const;

 private:
  int n_;
  double epsilon_;
  Matrix p_;
  Matrix alpha_;
  Matrix beta_;
  Matrix gamma_;
};

struct Violation {
  std::string rule;    // short machine-readable id
  std::string detail;  // offending indices and values
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the standing model assumptions: no self-meetings, meeting rows
// sum to one, interaction probabilities form a distribution with
// alpha + beta > 0 on supported pairs, and strong connectivity of the
// meeting digraph. Never throws; every violation is reported.
ValidationReport validate(const SocialNetwork& network);

struct MeetingDigraph {
  int n = 0;
  std::vector<std::pair<int, int>> links;  // ordered (i, j) with p_ij > 0
  Eigen::MatrixXi dist;                    // all-pairs BFS distances
  int diameter = 0;
};

// Throws NotStronglyConnected if some pair is unreachable.
MeetingDigraph meeting_digraph(const SocialNetwork& network);

}  // namespace gossip
