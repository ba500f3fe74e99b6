#include "gossip/network_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gossip {

namespace {

constexpr double kGammaTol = 1e-9;

double require_number(const nlohmann::json& obj, const char* key, std::size_t index) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    std::ostringstream os;
    os << "edge " << index << ": missing or non-numeric field '" << key << "'";
    throw ParseError(os.str());
  }
  return obj[key].get<double>();
}

}  // namespace

nlohmann::json network_to_json(const SocialNetwork& net) {
  nlohmann::json doc;
  doc["n"] = net.size();
  doc["epsilon"] = net.epsilon();
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const auto& e : net.edges()) {
    edges.push_back({{"i", e.i},
                     {"j", e.j},
                     {"p", e.p},
                     {"alpha", e.alpha},
                     {"beta", e.beta},
                     {"gamma", e.gamma}});
  }
  return doc;
}

SocialNetwork network_from_json(const nlohmann::json& doc, bool strict) {
  if (!doc.is_object()) throw ParseError("top-level document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("missing integer field 'n'");
  const int n = doc["n"].get<int>();
  if (n < 2) throw ParseError("n must be >= 2");
  if (!doc.contains("epsilon") || !doc["epsilon"].is_number())
    throw ParseError("missing numeric field 'epsilon'");
  const double epsilon = doc["epsilon"].get<double>();
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError("missing array field 'edges'");

  std::vector<InteractionEdge> edges;
  std::set<std::pair<int, int>> seen;
  std::size_t index = 0;
  for (const auto& obj : doc["edges"]) {
    InteractionEdge e;
    e.i = static_cast<int>(require_number(obj, "i", index));
    e.j = static_cast<int>(require_number(obj, "j", index));
    e.p = require_number(obj, "p", index);
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      std::ostringstream os;
      os << "edge " << index << ": index out of range";
      throw ParseError(os.str());
    }
    if (!seen.insert({e.i, e.j}).second) {
      std::ostringstream os;
      os << "edge " << index << ": duplicate pair (" << e.i << "," << e.j << ")";
      throw ParseError(os.str());
    }
    e.alpha = obj.contains("alpha") ? require_number(obj, "alpha", index) : 0.0;
    const bool has_beta = obj.contains("beta");
    const bool has_gamma = obj.contains("gamma");
    if (has_beta)
      e.beta = require_number(obj, "beta", index);
    else if (has_gamma)
      e.beta = 1.0 - e.alpha - require_number(obj, "gamma", index);
    else
      e.beta = 1.0 - e.alpha;
    if (has_gamma) {
      e.gamma = require_number(obj, "gamma", index);
      if (std::abs(e.alpha + e.beta + e.gamma - 1.0) > kGammaTol) {
        std::ostringstream os;
        os << "edge " << index << ": alpha+beta+gamma = " << e.alpha + e.beta + e.gamma
           << " inconsistent with 1";
        throw ParseError(os.str());
      }
    } else {
      e.gamma = 1.0 - e.alpha - e.beta;
      if (std::abs(e.gamma) < kGammaTol) e.gamma = 0.0;
    }
    edges.push_back(e);
    ++index;
  }

  SocialNetwork net = [&] {
    try {
      return SocialNetwork(n, epsilon, edges);
    } catch (const BadParams& bad) {
      throw ParseError(bad.what());
    }
  }();
  if (strict) {
    ValidationReport report = validate(net);
    if (!report.ok()) {
      std::ostringstream os;
      os << "network violates model assumptions:";
      for (const auto& v : report.violations) os << "\n  [" << v.rule << "] " << v.detail;
      throw ValidationError(os.str());
    }
  }
  return net;
}

SocialNetwork load_network(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("invalid JSON in '" + path + "': " + err.what());
  }
  return network_from_json(doc, strict);
}

void save_network(const SocialNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << network_to_json(net).dump(2) << "\n";
}

}  // namespace gossip
