#include "gossip/network.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <utility>

namespace gossip {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kProbSumTol = 1e-9;

std::string pair_str(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

SocialNetwork::SocialNetwork(int n, double epsilon,
                             const std::vector<InteractionEdge>& edges)
    : n_(n),
      epsilon_(epsilon),
      p_(Matrix::Zero(n, n)),
      alpha_(Matrix::Zero(n, n)),
      beta_(Matrix::Zero(n, n)),
      gamma_(Matrix::Zero(n, n)) {
  if (n < 2) throw BadParams("agent count must be at least 2");
  for (const auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw BadParams("edge index out of range at " + pair_str(e.i, e.j));
    p_(e.i, e.j) = e.p;
    alpha_(e.i, e.j) = e.alpha;
    beta_(e.i, e.j) = e.beta;
    gamma_(e.i, e.j) = e.gamma;
  }
}

SocialNetwork::SocialNetwork(double epsilon, Matrix meeting, Matrix alpha, Matrix beta,
                             Matrix gamma)
    : n_(static_cast<int>(meeting.rows())),
      epsilon_(epsilon),
      p_(std::move(meeting)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)) {
  if (n_ < 2) throw BadParams("agent count must be at least 2");
  if (p_.cols() != n_ || alpha_.rows() != n_ || alpha_.cols() != n_ ||
      beta_.rows() != n_ || beta_.cols() != n_ || gamma_.rows() != n_ ||
      gamma_.cols() != n_)
    throw BadParams("probability matrices must all be n by n");
}

std::vector<InteractionEdge> SocialNetwork::edges() const {
  std::vector<InteractionEdge> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (p_(i, j) > 0.0)
        out.push_back({i, j, p_(i, j), alpha_(i, j), beta_(i, j), gamma_(i, j)});
  return out;
}

std::vector<ForcefulLink> SocialNetwork::forceful_links() const {
  std::vector<ForcefulLink> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (alpha_(i, j) > 0.0 && p_(i, j) > 0.0)
        out.push_back({j, i, alpha_(i, j), p_(i, j) * alpha_(i, j)});
  return out;
}

double SocialNetwork::total_influence() const {
  return p_.cwiseProduct(alpha_).sum();
}

bool SocialNetwork::has_forceful() const {
  return !forceful_links().empty();
}

ValidationReport validate(const SocialNetwork& net) {
  ValidationReport report;
  const int n = net.size();
  const Matrix& p = net.meeting();
  const Matrix& a = net.influence_prob();
  const Matrix& b = net.averaging_prob();
  const Matrix& g = net.disagreement_prob();
  auto add = [&](const std::string& rule, const std::string& detail) {
    report.violations.push_back({rule, detail});
  };

  if (!(net.epsilon() > 0.0 && net.epsilon() <= 0.5)) {
    std::ostringstream os;
    os << "epsilon=" << net.epsilon() << " outside (0, 1/2]";
    add("epsilon-range", os.str());
  }

  for (int i = 0; i < n; ++i) {
    if (p(i, i) != 0.0) add("self-meeting", "self-meeting at agent " + std::to_string(i));
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (p(i, j) < 0.0) add("negative-meeting", "p" + pair_str(i, j) + " negative");
      row += p(i, j);
    }
    if (std::abs(row - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "meeting row " << i << " sums to " << row;
      add("row-sum", os.str());
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p(i, j) <= 0.0) continue;
      if (a(i, j) < 0.0 || b(i, j) < 0.0 || g(i, j) < 0.0)
        add("negative-interaction", "negative interaction probability at " + pair_str(i, j));
      if (std::abs(a(i, j) + b(i, j) + g(i, j) - 1.0) > kProbSumTol) {
        std::ostringstream os;
        os << "alpha+beta+gamma at " << pair_str(i, j) << " is "
           << a(i, j) + b(i, j) + g(i, j);
        add("interaction-sum", os.str());
      }
      if (a(i, j) + b(i, j) <= 0.0)
        add("no-exchange", "alpha+beta = 0 at supported pair " + pair_str(i, j));
    }
  }

  // strong connectivity of the meeting digraph
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p(i, j) > 0.0) {
        fwd[i].push_back(j);
        rev[j].push_back(i);
      }
  auto reach_count = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          queue.push_back(v);
        }
    }
    return count;
  };
  if (reach_count(fwd) != n || reach_count(rev) != n)
    add("not-strongly-connected", "meeting digraph is not strongly connected");

  return report;
}

MeetingDigraph meeting_digraph(const SocialNetwork& net) {
  const int n = net.size();
  MeetingDigraph dg;
  dg.n = n;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (net.meeting()(i, j) > 0.0) {
        dg.links.emplace_back(i, j);
        adj[i].push_back(j);
      }

  const int inf = std::numeric_limits<int>::max();
  dg.dist = Eigen::MatrixXi::Constant(n, n, inf);
  for (int s = 0; s < n; ++s) {
    dg.dist(s, s) = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[u])
        if (dg.dist(s, v) == inf) {
          dg.dist(s, v) = dg.dist(s, u) + 1;
          queue.push_back(v);
        }
    }
  }

  dg.diameter = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (dg.dist(i, j) == inf)
        throw NotStronglyConnected("no directed path from " + std::to_string(i) + " to " +
                                   std::to_string(j));
      dg.diameter = std::max(dg.diameter, dg.dist(i, j));
    }
  return dg;
}

}  // namespace gossip
