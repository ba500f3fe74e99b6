#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "gossip/generators.hpp"
#include "gossip/network.hpp"
#include "gossip/network_io.hpp"
#include "support/fixtures.hpp"

using namespace gossip;

namespace {

bool has_rule(const ValidationReport& report, const std::string& rule) {
  for (const auto& v : report.violations)
    if (v.rule == rule) return true;
  return false;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("dyad passes validation") {
  const auto report = validate(fixtures::dyad());
  CHECK(report.ok());
}

TEST_CASE("self-meeting is reported with the offending agent") {
  Matrix p(2, 2), a = Matrix::Zero(2, 2), b = Matrix::Ones(2, 2), g = Matrix::Zero(2, 2);
  p << 0.5, 0.5, 1.0, 0.0;
  const auto report = validate(SocialNetwork(0.5, p, a, b, g));
  CHECK(has_rule(report, "self-meeting"));
  CHECK(report.violations.front().detail.find("agent 0") != std::string::npos);
}

TEST_CASE("two disconnected dyads are not strongly connected") {
  SocialNetwork net(4, 0.5,
                    {{0, 1, 1.0, 0, 1, 0},
                     {1, 0, 1.0, 0, 1, 0},
                     {2, 3, 1.0, 0, 1, 0},
                     {3, 2, 1.0, 0, 1, 0}});
  CHECK(has_rule(validate(net), "not-strongly-connected"));
  CHECK_THROWS_AS(meeting_digraph(net), NotStronglyConnected);
}

TEST_CASE("broken row sum and assumption violations are reported") {
  SocialNetwork net(2, 0.5, {{0, 1, 0.9, 0, 1, 0}, {1, 0, 1.0, 0, 0, 1}});
  const auto report = validate(net);
  CHECK(has_rule(report, "row-sum"));
  CHECK(has_rule(report, "no-exchange"));
}

TEST_CASE("meeting digraph distances and diameter") {
  CHECK(meeting_digraph(fixtures::dyad()).diameter == 1);

  // directed 3-cycle
  SocialNetwork cycle(3, 0.5,
                      {{0, 1, 1.0, 0, 1, 0}, {1, 2, 1.0, 0, 1, 0}, {2, 0, 1.0, 0, 1, 0}});
  CHECK(meeting_digraph(cycle).diameter == 2);

  // two bridged triangles: the far corners are three hops apart
  const auto dg = meeting_digraph(gen::two_clusters('a'));
  CHECK(dg.diameter == 3);
  CHECK(dg.dist(0, 5) == 3);
  CHECK(dg.dist(2, 3) == 1);
}

TEST_CASE("dyad digraph links are exactly the positive pairs") {
  const auto dg = meeting_digraph(fixtures::dyad());
  REQUIRE(dg.links.size() == 2);
  CHECK(dg.links[0] == std::pair(0, 1));
  CHECK(dg.links[1] == std::pair(1, 0));
}

TEST_CASE("generators produce valid networks") {
  for (const auto& net :
       {gen::complete(4), gen::ring(5), gen::barbell(3, 0), gen::barbell(4, 2),
        gen::two_clusters('a'), gen::two_clusters('b'),
        gen::random_regular(12, 4, 7)}) {
    CHECK(validate(net).ok());
  }
}

TEST_CASE("barbell(3,0) is two triangles joined by one edge") {
  const auto net = gen::barbell(3, 0);
  CHECK(net.size() == 6);
  CHECK(net.edges().size() == 2 * 7);  // 7 undirected edges
}

TEST_CASE("barbell undirected edge count is 2*C(n1,2)+1 when n2=0") {
  for (int n1 : {2, 3, 4, 5}) {
    const auto net = gen::barbell(n1, 0);
    const int undirected = static_cast<int>(net.edges().size()) / 2;
    CHECK(undirected == n1 * (n1 - 1) + 1);
  }
}

TEST_CASE("complete(4) meets uniformly") {
  const auto net = gen::complete(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(net.meeting()(i, j) == (i == j ? 0.0 : doctest::Approx(1.0 / 3)));
}

TEST_CASE("generated meeting rows sum to one and interactions to one") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto net = fixtures::random_valid_network(seed);
    for (int i = 0; i < net.size(); ++i)
      CHECK(net.meeting().row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& e : net.edges())
      CHECK(e.alpha + e.beta + e.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(validate(net).ok());
  }
}

TEST_CASE("diameter is invariant under agent relabeling") {
  const auto net = fixtures::random_valid_network(11);
  const int n = net.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(99);
  std::shuffle(perm.begin(), perm.end(), rng);

  Matrix p(n, n), a(n, n), b(n, n), g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      p(perm[i], perm[j]) = net.meeting()(i, j);
      a(perm[i], perm[j]) = net.influence_prob()(i, j);
      b(perm[i], perm[j]) = net.averaging_prob()(i, j);
      g(perm[i], perm[j]) = net.disagreement_prob()(i, j);
    }
  SocialNetwork relabeled(net.epsilon(), p, a, b, g);
  CHECK(meeting_digraph(relabeled).diameter == meeting_digraph(net).diameter);
}

TEST_CASE("forceful links report source, target and strength") {
  const auto links = fixtures::forceful_dyad().forceful_links();
  REQUIRE(links.size() == 1);
  CHECK(links[0].source == 1);
  CHECK(links[0].target == 0);
  CHECK(links[0].alpha == 1.0);
  CHECK(links[0].strength == 1.0);
}

TEST_CASE("save then load is a bit-exact round trip") {
  const auto path = temp_file("gossipnet_roundtrip.json");
  for (std::uint64_t seed : {21, 22}) {
    const auto net = fixtures::random_valid_network(seed);
    save_network(net, path.string());
    const auto loaded = load_network(path.string());
    CHECK(loaded.size() == net.size());
    CHECK(loaded.epsilon() == net.epsilon());
    CHECK((loaded.meeting() - net.meeting()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((loaded.influence_prob() - net.influence_prob()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((loaded.averaging_prob() - net.averaging_prob()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((loaded.disagreement_prob() - net.disagreement_prob()).cwiseAbs().maxCoeff() ==
          0.0);
  }
  std::filesystem::remove(path);
}

TEST_CASE("loader defaults absent interaction fields to averaging") {
  const auto doc = nlohmann::json::parse(R"({
    "n": 2, "epsilon": 0.5,
    "edges": [{"i":0,"j":1,"p":1.0},{"i":1,"j":0,"p":1.0,"alpha":0.25}]})");
  const auto net = network_from_json(doc);
  CHECK(net.averaging_prob()(0, 1) == 1.0);
  CHECK(net.averaging_prob()(1, 0) == 0.75);
  CHECK(net.disagreement_prob()(1, 0) == 0.0);
}

TEST_CASE("row-sum-broken file loads loosely but fails strict load") {
  const auto path = temp_file("gossipnet_broken.json");
  std::ofstream(path) << R"({"n":2,"epsilon":0.5,
    "edges":[{"i":0,"j":1,"p":0.9},{"i":1,"j":0,"p":1.0}]})";
  CHECK_NOTHROW(load_network(path.string()));
  CHECK_THROWS_AS(load_network(path.string(), true), ValidationError);
  std::filesystem::remove(path);
}

TEST_CASE("parse errors carry context") {
  CHECK_THROWS_WITH_AS(network_from_json(nlohmann::json::parse(
                           R"({"n":1,"epsilon":0.5,"edges":[]})")),
                       "n must be >= 2", ParseError);
  // gamma inconsistent with 1 - alpha - beta
  CHECK_THROWS_AS(network_from_json(nlohmann::json::parse(R"({
      "n":2,"epsilon":0.5,
      "edges":[{"i":0,"j":1,"p":1.0,"alpha":0.2,"beta":0.8,"gamma":0.5},
               {"i":1,"j":0,"p":1.0}]})")),
                  ParseError);
  // duplicate ordered pair
  CHECK_THROWS_AS(network_from_json(nlohmann::json::parse(R"({
      "n":2,"epsilon":0.5,
      "edges":[{"i":0,"j":1,"p":0.5},{"i":0,"j":1,"p":0.5},{"i":1,"j":0,"p":1.0}]})")),
                  ParseError);
  CHECK_THROWS_AS(load_network("/nonexistent/gossipnet.json"), ParseError);
}

TEST_CASE("generator rejects bad parameters") {
  CHECK_THROWS_AS(gen::barbell(1, 0), BadParams);
  CHECK_THROWS_AS(gen::barbell(3, -1), BadParams);
  CHECK_THROWS_AS(gen::complete(1), BadParams);
  CHECK_THROWS_AS(gen::two_clusters('c'), BadParams);
  CHECK_THROWS_AS(gen::complete(4, 0.7), BadParams);
  // forceful link without a supporting meeting edge
  CHECK_THROWS_AS(gen::ring(5, 0.5, {{0, 2, 0.5}}), BadParams);
}

TEST_CASE("two-clusters fixtures carry the single calibrated forceful link") {
  const auto a = gen::two_clusters('a');
  REQUIRE(a.forceful_links().size() == 1);
  CHECK(a.forceful_links()[0].source == 2);
  CHECK(a.forceful_links()[0].target == 3);
  CHECK(a.epsilon() == gen::kTwoClustersEpsilon);

  const auto b = gen::two_clusters('b');
  REQUIRE(b.forceful_links().size() == 1);
  CHECK(b.forceful_links()[0].source == 1);
  CHECK(b.forceful_links()[0].target == 0);
}
