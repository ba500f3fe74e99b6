#include "gossip/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gossip::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (stream + 0x632be59bd9b4e019ULL));
  s = splitmix64(s ^ (index + 0x9e3779b97f4a7c15ULL));
  return s;
}

BeliefState::BeliefState(const Vector& x0) : x_(x0) {
  for (int i = 0; i < x_.size(); ++i) sorted_.insert(x_(i));
}

double BeliefState::spread() const {
  return *sorted_.rbegin() - *sorted_.begin();
}

void BeliefState::set_component(int i, double value) {
  auto it = sorted_.find(x_(i));
  sorted_.erase(it);
  sorted_.insert(value);
  x_(i) = value;
}

Simulator::Simulator(const SocialNetwork& network)
    : net_(network),
      partners_(network.size()),
      partner_cdf_(network.size()) {
  const int n = net_.size();
  const Matrix& p = net_.meeting();
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j)
      if (p(i, j) > 0.0) {
        partners_[i].push_back(j);
        total += p(i, j);
        partner_cdf_[i].push_back(total);
      }
    if (partners_[i].empty())
      throw BadParams("agent " + std::to_string(i) + " has no meeting partners");
    // guard the final bucket against rounding in the cumulative sums
    partner_cdf_[i].back() = total;
  }
}

MeetingEvent Simulator::sample_event(std::mt19937_64& rng) const {
  const int n = net_.size();
  MeetingEvent ev;
  std::uniform_int_distribution<int> pick(0, n - 1);
  ev.initiator = pick(rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& cdf = partner_cdf_[ev.initiator];
  const double row_total = cdf.back();
  const double u = unit(rng) * row_total;
  const auto bucket = std::upper_bound(cdf.begin(), cdf.end(), u);
  const std::size_t idx = std::min<std::size_t>(bucket - cdf.begin(), cdf.size() - 1);
  ev.partner = partners_[ev.initiator][idx];

  const double beta = net_.averaging_prob()(ev.initiator, ev.partner);
  const double alpha = net_.influence_prob()(ev.initiator, ev.partner);
  const double v = unit(rng);
  if (v < beta)
    ev.outcome = Outcome::Average;
  else if (v < beta + alpha)
    ev.outcome = Outcome::Influence;
  else
    ev.outcome = Outcome::Disagree;
  return ev;
}

MeetingEvent Simulator::step(BeliefState& state, std::mt19937_64& rng) const {
  const MeetingEvent ev = sample_event(rng);
  const double xi = state.beliefs()(ev.initiator);
  const double xj = state.beliefs()(ev.partner);
  const double lo = std::min(xi, xj);
  const double hi = std::max(xi, xj);
  switch (ev.outcome) {
    case Outcome::Average: {
      // clamp keeps the update inside [lo, hi] despite rounding, so the
      // spread never grows along a path
      const double mid = std::clamp((xi + xj) / 2.0, lo, hi);
      state.set_component(ev.initiator, mid);
      state.set_component(ev.partner, mid);
      break;
    }
    case Outcome::Influence: {
      const double eps = net_.epsilon();
      const double moved = std::clamp(eps * xi + (1.0 - eps) * xj, lo, hi);
      state.set_component(ev.initiator, moved);
      break;
    }
    case Outcome::Disagree:
      break;
  }
  state.count_event();
  return ev;
}

namespace {

RunResult run_with_rng(const Simulator& sim, const Vector& x0, const SimulationConfig& config,
                       std::mt19937_64& rng, bool keep_trace) {
  BeliefState state(x0);
  RunResult out;
  if (keep_trace) out.spread_trace.push_back(state.spread());
  while (state.spread() > config.tolerance && state.events() < config.max_events) {
    sim.step(state, rng);
    if (keep_trace && state.events() % std::max<std::uint64_t>(1, config.trace_decimation) == 0)
      out.spread_trace.push_back(state.spread());
  }
  out.x_final = state.beliefs();
  out.consensus = state.mean();
  out.events = state.events();
  out.converged = state.spread() <= config.tolerance;
  return out;
}

}  // namespace

RunResult run_to_consensus(const SocialNetwork& network, const Vector& x0,
                           const SimulationConfig& config) {
  if (x0.size() != network.size())
    throw std::invalid_argument("initial belief vector has wrong length");
  Simulator sim(network);
  std::mt19937_64 rng(config.seed);
  return run_with_rng(sim, x0, config, rng, true);
}

ConsensusEstimate estimate_consensus_weights(const SocialNetwork& network,
                                             const SimulationConfig& config) {
  const int n = network.size();
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  Simulator sim(network);

  ConsensusEstimate est;
  est.pi_hat = Vector::Zero(n);
  est.std_error = Vector::Zero(n);
  est.trials = config.trials;
  for (int h = 0; h < n; ++h) {
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < config.trials; ++t) {
      std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(h),
                                      static_cast<std::uint64_t>(t)));
      const RunResult run = run_with_rng(sim, Vector::Unit(n, h), config, rng, false);
      sum += run.consensus;
      sum_sq += run.consensus * run.consensus;
    }
    const double mean = sum / config.trials;
    est.pi_hat(h) = mean;
    if (config.trials > 1) {
      const double variance =
          std::max(0.0, (sum_sq - config.trials * mean * mean) / (config.trials - 1));
      est.std_error(h) = std::sqrt(variance / config.trials);
    }
  }
  return est;
}

SpreadProfile spread_decay_profile(const SocialNetwork& network, const Vector& x0,
                                   const SimulationConfig& config, std::uint64_t window) {
  const int n = network.size();
  if (window == 0) window = static_cast<std::uint64_t>(n) * n;
  Simulator sim(network);
  std::mt19937_64 rng(config.seed);
  BeliefState state(x0);

  SpreadProfile profile;
  profile.window = window;
  double previous = state.spread();
  double window_start_spread = previous;
  while (state.spread() > config.tolerance && state.events() < config.max_events) {
    sim.step(state, rng);
    const double now = state.spread();
    if (now > previous) profile.monotone = false;
    previous = now;
    if (state.events() % window == 0) {
      profile.window_spread.push_back(now);
      if (window_start_spread > 0.0)
        profile.window_ratio.push_back(now / window_start_spread);
      window_start_spread = now;
    }
  }
  return profile;
}

}  // namespace gossip::sim
