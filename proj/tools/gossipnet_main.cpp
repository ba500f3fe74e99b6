// Command line front end: validate, generate, analyze, bounds, cluster
// and simulate subcommands over the JSON network format.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gossip/cuts.hpp"
#include "gossip/generators.hpp"
#include "gossip/influence.hpp"
#include "gossip/network.hpp"
#include "gossip/network_io.hpp"
#include "gossip/report.hpp"
#include "gossip/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

struct CliError {
  int code;
  std::string message;
};

gossip::Vector parse_x0(const std::string& csv, int n) {
  gossip::Vector x0(n);
  std::stringstream stream(csv);
  std::string item;
  int k = 0;
  while (std::getline(stream, item, ',')) {
    if (k >= n) throw CliError{kExitDomain, "x0 has more entries than agents"};
    x0(k++) = std::stod(item);
  }
  if (k != n) throw CliError{kExitDomain, "x0 must list one value per agent"};
  return x0;
}

std::vector<gossip::gen::ForcefulSpec> parse_forceful(const std::vector<std::string>& specs) {
  std::vector<gossip::gen::ForcefulSpec> out;
  for (const auto& spec : specs) {
    gossip::gen::ForcefulSpec f;
    char c1 = 0, c2 = 0;
    std::stringstream stream(spec);
    if (!(stream >> f.source >> c1 >> f.target >> c2 >> f.alpha) || c1 != ':' || c2 != ':')
      throw CliError{kExitDomain, "forceful spec must look like source:target:alpha"};
    out.push_back(f);
  }
  return out;
}

void emit(const nlohmann::json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw CliError{kExitIo, "cannot write '" + out_path + "'"};
    out << doc.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw CliError{kExitIo, "cannot write '" + out_path + "'"};
    out << text;
  }
}

std::string bounds_csv(const nlohmann::json& doc) {
  std::ostringstream os;
  os << "bound,value,certified,vacuous\n";
  for (const char* name : {"delta", "l2", "conductance"}) {
    const auto& b = doc[name];
    os << name << "," << b["value"].dump() << "," << b["certified"].dump() << ","
       << b["vacuous"].dump() << "\n";
  }
  os << "actual_inf_norm," << doc["actual_inf_norm"].dump() << ",,\n";
  os << "actual_l2_norm," << doc["actual_l2_norm"].dump() << ",,\n";
  return os.str();
}

std::string estimate_csv(const nlohmann::json& doc) {
  std::ostringstream os;
  os << "agent,pi_hat,std_error,analytic_pi\n";
  for (std::size_t i = 0; i < doc["pi_hat"].size(); ++i)
    os << i << "," << doc["pi_hat"][i].dump() << "," << doc["std_error"][i].dump() << ","
       << doc["analytic_pi"][i].dump() << "\n";
  return os.str();
}

std::string spread_csv(const std::vector<double>& trace, std::uint64_t decimation) {
  std::ostringstream os;
  os << "event,spread\n";
  for (std::size_t k = 0; k < trace.size(); ++k)
    os << k * decimation << "," << trace[k] << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytics and simulation for gossip networks with forceful agents"};
  app.require_subcommand(1);

  std::string in_path, out_path, format = "json", x0_csv;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  bool exact_cuts = false;
  bool strict = false;

  auto* cmd_validate = app.add_subcommand("validate", "check the model assumptions");
  cmd_validate->add_option("file", in_path)->required();
  cmd_validate->add_flag("--strict", strict, "also fail on parse-level inconsistencies");

  auto* cmd_generate = app.add_subcommand("generate", "write a generated network");
  std::string kind, variant = "a", gen_out;
  int gen_n = 6, gen_n1 = 3, gen_n2 = 0, gen_degree = 4;
  double gen_epsilon = -1.0;
  std::uint64_t gen_seed = 0;
  std::vector<std::string> forceful_specs;
  cmd_generate->add_option("kind", kind, "complete | ring | barbell | two-clusters | random-regular")
      ->required();
  cmd_generate->add_option("--out", gen_out)->required();
  cmd_generate->add_option("--n", gen_n);
  cmd_generate->add_option("--n1", gen_n1);
  cmd_generate->add_option("--n2", gen_n2);
  cmd_generate->add_option("--degree", gen_degree);
  cmd_generate->add_option("--variant", variant, "two-clusters variant, a or b");
  cmd_generate->add_option("--epsilon", gen_epsilon);
  cmd_generate->add_option("--seed", gen_seed);
  cmd_generate->add_option("--forceful", forceful_specs, "source:target:alpha, repeatable");

  auto* cmd_analyze = app.add_subcommand("analyze", "full analysis report");
  int simulate_trials = 0;
  std::vector<int> cluster_pair;
  cmd_analyze->add_option("file", in_path)->required();
  cmd_analyze->add_option("--x0", x0_csv, "comma separated initial beliefs");
  cmd_analyze->add_option("--simulate", simulate_trials, "Monte Carlo trials per agent");
  cmd_analyze->add_option("--cluster", cluster_pair, "two endpoint agents")->expected(2);
  cmd_analyze->add_flag("--exact-cuts", exact_cuts);
  cmd_analyze->add_option("--seed", seed);
  cmd_analyze->add_option("--tolerance", tolerance);
  cmd_analyze->add_option("--format", format, "json");
  cmd_analyze->add_option("--out", out_path);

  auto* cmd_bounds = app.add_subcommand("bounds", "misinformation bounds only");
  cmd_bounds->add_option("file", in_path)->required();
  cmd_bounds->add_flag("--exact-cuts", exact_cuts);
  cmd_bounds->add_option("--format", format, "json | csv");
  cmd_bounds->add_option("--out", out_path);

  auto* cmd_cluster = app.add_subcommand("cluster", "recursive bottleneck trace");
  int node_a = 0, node_b = 1;
  cmd_cluster->add_option("file", in_path)->required();
  cmd_cluster->add_option("a", node_a)->required();
  cmd_cluster->add_option("b", node_b)->required();
  cmd_cluster->add_flag("--exact-cuts", exact_cuts);
  cmd_cluster->add_option("--out", out_path);

  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo consensus estimate");
  int trials = 1000;
  std::uint64_t decimation = 1;
  bool spread_trace = false;
  cmd_simulate->add_option("file", in_path)->required();
  cmd_simulate->add_option("--trials", trials);
  cmd_simulate->add_option("--x0", x0_csv, "run a single trajectory from this state");
  cmd_simulate->add_flag("--spread-trace", spread_trace,
                         "with --x0: emit the spread trace instead of estimates");
  cmd_simulate->add_option("--decimation", decimation, "keep every k-th spread sample");
  cmd_simulate->add_option("--seed", seed);
  cmd_simulate->add_option("--tolerance", tolerance);
  cmd_simulate->add_option("--format", format, "json | csv");
  cmd_simulate->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_validate->parsed()) {
      const gossip::SocialNetwork net = gossip::load_network(in_path, strict);
      const gossip::ValidationReport report = gossip::validate(net);
      emit(gossip::validation_json(report), "");
      return report.ok() ? kExitOk : kExitDomain;
    }

    if (cmd_generate->parsed()) {
      const auto forceful = parse_forceful(forceful_specs);
      auto epsilon_or = [&](double fallback) {
        return gen_epsilon > 0.0 ? gen_epsilon : fallback;
      };
      std::optional<gossip::SocialNetwork> net;
      if (kind == "complete")
        net = gossip::gen::complete(gen_n, epsilon_or(0.5), forceful);
      else if (kind == "ring")
        net = gossip::gen::ring(gen_n, epsilon_or(0.5), forceful);
      else if (kind == "barbell")
        net = gossip::gen::barbell(gen_n1, gen_n2, epsilon_or(0.5), forceful);
      else if (kind == "two-clusters")
        net = gossip::gen::two_clusters(variant.at(0),
                                        epsilon_or(gossip::gen::kTwoClustersEpsilon));
      else if (kind == "random-regular")
        net = gossip::gen::random_regular(gen_n, gen_degree, gen_seed, epsilon_or(0.5),
                                          forceful);
      else
        throw CliError{kExitDomain, "unknown generator kind '" + kind + "'"};
      gossip::save_network(*net, gen_out);
      return kExitOk;
    }

    const gossip::SocialNetwork net = gossip::load_network(in_path, false);
    if (!cmd_simulate->parsed() || !spread_trace) {
      const gossip::ValidationReport report = gossip::validate(net);
      if (!report.ok()) {
        emit(gossip::validation_json(report), "");
        return kExitDomain;
      }
    }

    if (cmd_analyze->parsed()) {
      gossip::AnalysisOptions options;
      if (!x0_csv.empty()) options.x0 = parse_x0(x0_csv, net.size());
      options.simulate_trials = simulate_trials;
      if (!cluster_pair.empty())
        options.cluster_endpoints = std::make_pair(cluster_pair[0], cluster_pair[1]);
      options.exact_cuts = exact_cuts;
      options.seed = seed;
      options.tolerance = tolerance;
      emit(gossip::analyze(net, options), out_path);
      return kExitOk;
    }

    if (cmd_bounds->parsed()) {
      const nlohmann::json doc = gossip::bounds_json(net, exact_cuts);
      if (format == "csv")
        emit_text(bounds_csv(doc), out_path);
      else
        emit(doc, out_path);
      return kExitOk;
    }

    if (cmd_cluster->parsed()) {
      emit(gossip::cluster_json(net, node_a, node_b, exact_cuts), out_path);
      return kExitOk;
    }

    if (cmd_simulate->parsed()) {
      if (!x0_csv.empty()) {
        gossip::sim::SimulationConfig config;
        config.seed = seed;
        config.tolerance = tolerance;
        config.trace_decimation = decimation;
        const auto run =
            gossip::sim::run_to_consensus(net, parse_x0(x0_csv, net.size()), config);
        if (spread_trace || format == "csv") {
          emit_text(spread_csv(run.spread_trace, decimation), out_path);
        } else {
          nlohmann::json doc = {{"schema_version", gossip::kReportSchemaVersion},
                                {"consensus", run.consensus},
                                {"events", run.events},
                                {"converged", run.converged},
                                {"seed", seed}};
          emit(doc, out_path);
        }
        return kExitOk;
      }
      const nlohmann::json doc = gossip::simulate_json(net, trials, seed, tolerance);
      if (format == "csv")
        emit_text(estimate_csv(doc), out_path);
      else
        emit(doc, out_path);
      return kExitOk;
    }
  } catch (const CliError& err) {
    std::cerr << nlohmann::json{{"error", err.message}}.dump() << "\n";
    return err.code;
  } catch (const gossip::ParseError& err) {
    std::cerr << nlohmann::json{{"error", err.what()}}.dump() << "\n";
    return kExitIo;
  } catch (const gossip::ValidationError& err) {
    std::cerr << nlohmann::json{{"error", err.what()}}.dump() << "\n";
    return kExitDomain;
  } catch (const std::exception& err) {
    std::cerr << nlohmann::json{{"error", err.what()}}.dump() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
