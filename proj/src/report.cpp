#include "gossip/report.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "gossip/cuts.hpp"
#include "gossip/influence.hpp"
#include "gossip/kernel.hpp"
#include "gossip/markov.hpp"
#include "gossip/simulator.hpp"

namespace gossip {

namespace {

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

nlohmann::json bound_json(const Bound& b) {
  return {{"value", b.value}, {"vacuous", b.vacuous}, {"certified", b.certified}};
}

const char* mode_name(cuts::CutMode mode) {
  return mode == cuts::CutMode::Exact ? "exact" : "heuristic";
}

nlohmann::json trace_json(const cuts::ClusterTrace& trace) {
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& it : trace.iterations) {
    iterations.push_back({{"subgraph_nodes", it.subgraph_nodes},
                          {"rho", it.rho},
                          {"cut_side", it.cut_side},
                          {"bound", it.bound},
                          {"separates_endpoints", it.separates_endpoints},
                          {"disjoint_with_next", it.disjoint_with_next}});
  }
  return {{"iterations", iterations},
          {"final_bound", trace.final_bound},
          {"mode", mode_name(trace.mode)}};
}

nlohmann::json network_summary(const SocialNetwork& net) {
  nlohmann::json forceful = nlohmann::json::array();
  for (const auto& link : net.forceful_links())
    forceful.push_back({{"source", link.source},
                        {"target", link.target},
                        {"alpha", link.alpha},
                        {"strength", link.strength}});
  return {{"n", net.size()},
          {"epsilon", net.epsilon()},
          {"edge_count", net.edges().size()},
          {"forceful_links", forceful},
          {"total_influence", net.total_influence()},
          {"diameter", meeting_digraph(net).diameter}};
}

// rho of the social-network chain, exact when sized for it or requested
std::pair<double, bool> rho_for(const Matrix& T, bool exact_cuts) {
  const auto graph = cuts::WeightedGraph::from_social_matrix(T);
  const bool exact = exact_cuts && graph.size() <= cuts::kMaxExactNodes;
  const auto cut = min_normalized_cut(
      graph, exact ? cuts::CutMode::Exact : cuts::CutMode::Heuristic);
  return {cut.normalized_value, exact};
}

}  // namespace

nlohmann::json validation_json(const ValidationReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"rule", v.rule}, {"detail", v.detail}});
  return {{"ok", report.ok()}, {"violations", violations}};
}

nlohmann::json analyze(const SocialNetwork& net, const AnalysisOptions& options) {
  const int n = net.size();
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["network"] = network_summary(net);

  const InteractionDecomposition dec = decompose(net);
  const StationaryDistribution direct = stationary(dec.W);
  const StationaryDistribution perturbed = perturbed_stationary(dec.T, dec.D);
  doc["consensus"] = {
      {"pi", vector_json(direct.pi)},
      {"pi_perturbation_identity", vector_json(perturbed.pi)},
      {"route_discrepancy", (direct.pi - perturbed.pi).cwiseAbs().maxCoeff()},
      {"residual", direct.residual}};

  const ExcessInfluence exact = excess_influence_exact(net);
  const ExcessInfluence via_mfpt = excess_influence_mfpt(net);
  nlohmann::json excess = {
      {"exact", vector_json(exact.excess)},
      {"mfpt", vector_json(via_mfpt.excess)},
      {"mfpt_discrepancy", (exact.excess - via_mfpt.excess).cwiseAbs().maxCoeff()},
      {"zero_sum_residual", std::abs(exact.excess.sum())}};
  try {
    const ExcessInfluence disjoint = excess_influence_disjoint(net);
    excess["disjoint"] = vector_json(disjoint.excess);
    excess["disjoint_discrepancy"] =
        (exact.excess - disjoint.excess).cwiseAbs().maxCoeff();
  } catch (const OverlappingForcefulEdges&) {
    excess["disjoint"] = nullptr;
    excess["disjoint_discrepancy"] = nullptr;
  }
  if (options.x0) {
    if (options.x0->size() != n)
      throw std::invalid_argument("x0 has wrong length");
    excess["consensus_gap"] = consensus_gap(exact, *options.x0);
    excess["gap_bound"] = bound_json(bound_gap(net, *options.x0));
  }
  doc["excess_influence"] = excess;

  const auto [rho, rho_exact] = rho_for(dec.T, options.exact_cuts);
  const BoundsReport bounds = bounds_report(net, std::make_pair(rho, rho_exact));
  const EtaConstants constants = eta_constants(net);
  const SpectralInfo spectral = second_eigenvalue(dec.T);
  doc["bounds"] = {{"delta", bound_json(bounds.delta_bound)},
                   {"l2", bound_json(bounds.l2_bound)},
                   {"conductance", bound_json(*bounds.conductance_bound)},
                   {"actual_inf_norm", bounds.actual_inf_norm},
                   {"actual_l2_norm", bounds.actual_l2_norm},
                   {"eta", constants.eta},
                   {"chi", constants.chi},
                   {"delta_constant", constants.delta},
                   {"lambda2", spectral.lambda2},
                   {"spectral_gap", spectral.spectral_gap},
                   {"rho", {{"value", rho}, {"mode", rho_exact ? "exact" : "heuristic"}}}};

  nlohmann::json bridges = nlohmann::json::array();
  for (const auto& bridge : essential_edges(net).bridges)
    bridges.push_back({{"i", bridge.i},
                       {"j", bridge.j},
                       {"side_i_size", bridge.side_i_size},
                       {"side_j_size", bridge.side_j_size}});
  doc["essential_edges"] = bridges;
  try {
    doc["essential_edge_excess"] = vector_json(essential_edge_excess(net).excess);
  } catch (const NotApplicable&) {
    doc["essential_edge_excess"] = nullptr;
  }

  if (options.cluster_endpoints) {
    const auto [a, b] = *options.cluster_endpoints;
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::invalid_argument("cluster endpoints out of range");
    const auto graph = cuts::WeightedGraph::from_social_matrix(dec.T);
    doc["cluster"] = trace_json(cuts::cluster_bound(
        graph, a, b, options.exact_cuts ? cuts::CutMode::Exact : cuts::CutMode::Heuristic));
  } else {
    doc["cluster"] = nullptr;
  }

  if (options.simulate_trials > 0) {
    sim::SimulationConfig config;
    config.seed = options.seed;
    config.tolerance = options.tolerance;
    config.trials = options.simulate_trials;
    const sim::ConsensusEstimate est = sim::estimate_consensus_weights(net, config);
    Vector deviation = (est.pi_hat - direct.pi).cwiseAbs();
    doc["simulation"] = {{"pi_hat", vector_json(est.pi_hat)},
                         {"std_error", vector_json(est.std_error)},
                         {"trials", est.trials},
                         {"max_deviation_from_analytic", deviation.maxCoeff()}};
  } else {
    doc["simulation"] = nullptr;
  }

  doc["provenance"] = {{"seed", options.seed},
                       {"tolerance", options.tolerance},
                       {"cut_mode", rho_exact ? "exact" : "heuristic"},
                       {"schema_version", kReportSchemaVersion}};
  return doc;
}

nlohmann::json bounds_json(const SocialNetwork& net, bool exact_cuts) {
  const InteractionDecomposition dec = decompose(net);
  const auto [rho, rho_exact] = rho_for(dec.T, exact_cuts);
  const BoundsReport report = bounds_report(net, std::make_pair(rho, rho_exact));
  return {{"schema_version", kReportSchemaVersion},
          {"delta", bound_json(report.delta_bound)},
          {"l2", bound_json(report.l2_bound)},
          {"conductance", bound_json(*report.conductance_bound)},
          {"actual_inf_norm", report.actual_inf_norm},
          {"actual_l2_norm", report.actual_l2_norm},
          {"rho", {{"value", rho}, {"mode", rho_exact ? "exact" : "heuristic"}}}};
}

nlohmann::json cluster_json(const SocialNetwork& net, int a, int b, bool exact_cuts) {
  const InteractionDecomposition dec = decompose(net);
  const auto graph = cuts::WeightedGraph::from_social_matrix(dec.T);
  auto trace = cuts::cluster_bound(
      graph, a, b, exact_cuts ? cuts::CutMode::Exact : cuts::CutMode::Heuristic);
  nlohmann::json doc = trace_json(trace);
  doc["schema_version"] = kReportSchemaVersion;
  doc["endpoints"] = {a, b};
  return doc;
}

nlohmann::json simulate_json(const SocialNetwork& net, int trials, std::uint64_t seed,
                             double tolerance) {
  sim::SimulationConfig config;
  config.seed = seed;
  config.tolerance = tolerance;
  config.trials = trials;
  const sim::ConsensusEstimate est = sim::estimate_consensus_weights(net, config);
  const Vector pi = stationary(mean_interaction_matrix(net)).pi;
  return {{"schema_version", kReportSchemaVersion},
          {"pi_hat", vector_json(est.pi_hat)},
          {"std_error", vector_json(est.std_error)},
          {"trials", est.trials},
          {"analytic_pi", vector_json(pi)},
          {"max_deviation_from_analytic", (est.pi_hat - pi).cwiseAbs().maxCoeff()},
          {"seed", seed},
          {"tolerance", tolerance}};
}

}  // namespace gossip
