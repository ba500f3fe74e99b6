#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gossip/network.hpp"

namespace gossip {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by strict loads when the parsed network violates the model
// assumptions; carries the validation report rendered as text.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document layout: {"n": int, "epsilon": real, "edges": [
//   {"i": int, "j": int, "p": real, "alpha"?: real, "beta"?: real, "gamma"?: real}, ...]}
// Missing interaction fields default to pure averaging (beta = 1). gamma
// may be omitted and is derived as 1 - alpha - beta; when given it must
// agree with that within 1e-9.
nlohmann::json network_to_json(const SocialNetwork& network);
SocialNetwork network_from_json(const nlohmann::json& doc, bool strict = false);

SocialNetwork load_network(const std::string& path, bool strict = false);
void save_network(const SocialNetwork& network, const std::string& path);

}  // namespace gossip
