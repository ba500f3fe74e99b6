#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gossip/network.hpp"
#include "gossip/types.hpp"

namespace gossip::sim {

struct SimulationConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-10;          // spread threshold declaring consensus
  std::uint64_t max_events = 10'000'000;
  int trials = 1;
  std::uint64_t trace_decimation = 1;  // keep every k-th spread sample
};

enum class Outcome { Average, Influence, Disagree };

struct MeetingEvent {
  int initiator = 0;
  int partner = 0;
  Outcome outcome = Outcome::Disagree;
};

// Belief vector plus the bookkeeping needed to read off the spread
// (max - min) in O(log n) per event.
class BeliefState {
 public:
  explicit BeliefState(const Vector& x0);

  const Vector& beliefs() const { return x_; }
  std::uint64_t events() const { return events_; }
  double spread() const;
  double mean() const { return x_.mean(); }

  void set_component(int i, double value);
  void count_event() { ++events_; }

 private:
  Vector x_;
  std::multiset<double> sorted_;
  std::uint64_t events_ = 0;
};

// Deterministic per-stream seed derivation, independent of execution
// order: mixes (master, stream, index) through splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

// Event sampler with precomputed per-row partner tables.
class Simulator {
 public:
  explicit Simulator(const SocialNetwork& network);

  const SocialNetwork& network() const { return net_; }

  MeetingEvent sample_event(std::mt19937_64& rng) const;
  // Applies one sampled event: averaging sets both beliefs to the
  // midpoint, influence moves only the initiator, disagreement is a no-op.
  MeetingEvent step(BeliefState& state, std::mt19937_64& rng) const;

 private:
  SocialNetwork net_;
  std::vector<std::vector<int>> partners_;
  std::vector<std::vector<double>> partner_cdf_;
};

struct RunResult {
  Vector x_final;
  double consensus = 0.0;  // mean of the final components
  std::uint64_t events = 0;
  bool converged = false;
  std::vector<double> spread_trace;  // decimated
};

RunResult run_to_consensus(const SocialNetwork& network, const Vector& x0,
                           const SimulationConfig& config);

struct ConsensusEstimate {
  Vector pi_hat;     // estimated consensus weight per agent
  Vector std_error;  // standard error of each component
  int trials = 0;
};

// Runs `trials` simulations from every unit initial vector e_h; the mean
// consensus over trials estimates the weight of agent h. Seeds derive
// from (seed, h, trial), so the estimate does not depend on run order.
ConsensusEstimate estimate_consensus_weights(const SocialNetwork& network,
                                             const SimulationConfig& config);

struct SpreadProfile {
  std::uint64_t window = 0;
  std::vector<double> window_spread;  // spread at the end of each window
  std::vector<double> window_ratio;   // consecutive-window ratios
  bool monotone = true;               // spread nonincreasing at every event
};

// Tracks the spread of one trajectory window by window (default window
// n^2 events) until consensus or max_events.
SpreadProfile spread_decay_profile(const SocialNetwork& network, const Vector& x0,
                                   const SimulationConfig& config,
                                   std::uint64_t window = 0);

}  // namespace gossip::sim
