#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "sfcgame/placement.hpp"

using namespace sfcgame;

namespace {

VnfSpec vnf(double cpu, double mem, double exec) { return VnfSpec{cpu, mem, exec, false}; }

SatelliteNode plain_node(int id) {
  SatelliteNode n;
  n.id = id;
  return n;
}

Link link(int a, int b, double km) { return Link{a, b, 100.0, link_delay(km), km}; }

std::vector<ServerContext> idle_servers(const NetworkGraph& g) {
  std::vector<ServerContext> out;
  for (const auto& n : g.nodes()) out.push_back({PlacementMode::Idle, false, n.capacity.cpu});
  return out;
}

std::vector<int> corridor(const Path& p) {
  std::vector<int> c(p.nodes.begin(), p.nodes.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

// Exhaustive best payoff over every candidate path's corridor.
std::optional<double> exhaustive(const UserRequest& r, const NetworkGraph& g,
                                 const ResourceUsage& usage,
                                 std::span<const ServerContext> servers, int d) {
  std::optional<double> best;
  for (const Path& p : g.candidate_sd_paths(r.source, r.destination, d)) {
    const auto all = oracle::enumerate_strategies(r, g, usage, servers, IdleCharge::Once,
                                                  Weights{}, corridor(p), d);
    if (auto b = oracle::best_payoff(all); b && (!best || *b > *best)) best = b;
  }
  return best;
}

bool feasible_alone(const Strategy& s, const UserRequest& r, const NetworkGraph& g,
                    const SlotContext& ctx) {
  StrategyProfile p;
  p.set(s);
  std::vector<UserRequest> reqs{r};
  return check_feasibility(p, reqs, g, ctx).empty();
}

}  // namespace

TEST_CASE("empty chain with coinciding endpoints stays put") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  const ResourceUsage usage(g);
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 3, 3, {}, {10});
  r.max_delay = 0.0;
  const auto s = best_response(PlacementInput{r, g, usage, servers}, PlacementConfig{});
  REQUIRE(s);
  CHECK(s->hosts == std::vector<NodeId>{3, 3});
  CHECK(s->routes[0].nodes == std::vector<NodeId>{3});
  CHECK(s->payoff() == 1.0);
}

TEST_CASE("a full source pushes the VNF to the nearest neighbour and back") {
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < 9; ++i) nodes.push_back(plain_node(i));
  const NetworkGraph g(nodes, {link(4, 7, 400), link(6, 7, 600), link(7, 8, 600), link(1, 4, 600),
                               link(0, 1, 600), link(2, 5, 400), link(3, 6, 400), link(5, 8, 600),
                               link(0, 3, 400), link(0, 2, 600)});
  ResourceUsage usage(g);
  usage.node[7].cpu = 112;
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 7, 7, {vnf(4, 4, 10)}, {10, 10});
  // Only the 400 km round trip fits the budget.
  r.max_delay = 10.0 + 2 * link_delay(400);
  const auto s = best_response(PlacementInput{r, g, usage, servers}, PlacementConfig{});
  REQUIRE(s);
  CHECK(s->hosts == std::vector<NodeId>{7, 4, 7});
  CHECK(s->routes[0].nodes == std::vector<NodeId>{7, 4});
  CHECK(s->routes[1].nodes == std::vector<NodeId>{4, 7});

  // Without spare room anywhere in reach there is no placement.
  usage.node[4].cpu = 112;
  CHECK_FALSE(best_response(PlacementInput{r, g, usage, servers}, PlacementConfig{}));
}

TEST_CASE("unbounded beam matches exhaustive search") {
  std::mt19937_64 rng(3);
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  WorkloadRanges ranges;
  ranges.vnf_count_min = 1;
  ranges.vnf_count_max = 3;
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto reqs = generate_requests(1, g, ranges, 100 + trial, 0);
    const auto& r = reqs[0];
    ResourceUsage usage(g);
    for (int n = 0; n < g.node_count(); ++n)
      usage.node[n].cpu = std::uniform_int_distribution<int>(0, 26)(rng) * 4.0;
    for (int l = 0; l < g.link_count(); ++l)
      usage.link[l] = std::uniform_int_distribution<int>(0, 9)(rng) * 10.0;
    std::vector<ServerContext> servers;
    for (int n = 0; n < g.node_count(); ++n) {
      const int m = std::uniform_int_distribution<int>(0, 3)(rng);
      const PlacementMode mode = m == 0   ? PlacementMode::On
                                 : m == 1 ? PlacementMode::Idle
                                 : m == 2 ? PlacementMode::Off
                                          : PlacementMode::Unavailable;
      servers.push_back({mode, std::bernoulli_distribution(0.5)(rng), 112});
    }
    for (int d : {1, 2, 3}) {
      PlacementConfig cfg;
      cfg.d = d;
      cfg.beam = kUnbounded;
      const auto got = best_response(PlacementInput{r, g, usage, servers}, cfg);
      const auto want = exhaustive(r, g, usage, servers, d);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(std::abs(got->payoff() - *want) <= 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("the second shortest route is used when the first is full") {
  // Square 0-1-2-3-0: two equal-hop routes between 0 and 2.
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back(plain_node(i));
  const NetworkGraph g(nodes, {link(0, 1, 400), link(1, 2, 400), link(2, 3, 600), link(0, 3, 600)});
  ResourceUsage usage(g);
  usage.link[static_cast<std::size_t>(g.find_link(0, 1))] = 95;
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 0, 2, {}, {20});
  r.max_delay = 100.0;

  PlacementConfig one;
  one.d = 1;
  CHECK_FALSE(best_response(PlacementInput{r, g, usage, servers}, one));

  PlacementConfig two;
  two.d = 2;
  const auto s = best_response(PlacementInput{r, g, usage, servers}, two);
  REQUIRE(s);
  CHECK(s->routes[0].nodes == std::vector<NodeId>{0, 3, 2});
}

TEST_CASE("saturated network gives no placement") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  ResourceUsage usage(g);
  for (auto& n : usage.node) n.cpu = 110;
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 0, 1, {vnf(4, 4, 10)}, {10, 10});
  r.max_delay = 50;
  CHECK_FALSE(best_response(PlacementInput{r, g, usage, servers}, PlacementConfig{}));
  CHECK_FALSE(greedy_place(PlacementInput{r, g, usage, servers}, PlacementConfig{}));
}

TEST_CASE("greedy never beats viterbi with an unbounded beam") {
  const auto g = build_constellation(3, 3, 600, 400, {}, 100);
  const auto reqs = generate_requests(60, g, WorkloadRanges{}, 21, 0);
  const auto ctx = SlotContext::fresh(g);
  PlacementConfig full;
  full.beam = kUnbounded;
  full.d = 2;
  int compared = 0;
  for (const auto& r : reqs) {
    const auto gr = greedy_place(PlacementInput{r, g, ctx.base_usage, ctx.servers}, full);
    if (!gr) continue;
    const auto vb = best_response(PlacementInput{r, g, ctx.base_usage, ctx.servers}, full);
    REQUIRE(vb);
    CHECK(gr->payoff() <= vb->payoff() + 1e-12);
    CHECK(feasible_alone(*gr, r, g, ctx));
    ++compared;
  }
  CHECK(compared > 30);
}

TEST_CASE("greedy breaks cost ties toward the smallest node id") {
  // Triangle with identical links and node 2 full: hosts 0 and 1 cost the
  // same, so the smaller id wins.
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < 3; ++i) nodes.push_back(plain_node(i));
  const NetworkGraph g(nodes, {link(0, 1, 400), link(1, 2, 400), link(0, 2, 400)});
  ResourceUsage usage(g);
  usage.node[2].cpu = 112;
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 2, 2, {vnf(4, 4, 10)}, {10, 10});
  r.max_delay = 30;
  PlacementConfig cfg;
  cfg.d = 3;
  const auto s = greedy_place(PlacementInput{r, g, usage, servers}, cfg);
  REQUIRE(s);
  CHECK(s->hosts[1] == 0);
}

TEST_CASE("placements are deterministic and feasible") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  const auto ctx = SlotContext::fresh(g);
  const auto reqs = generate_requests(20, g, WorkloadRanges{}, 8, 0);
  for (const auto& r : reqs) {
    const PlacementInput in{r, g, ctx.base_usage, ctx.servers};
    const auto a = best_response(in, PlacementConfig{});
    const auto b = best_response(in, PlacementConfig{});
    REQUIRE(a.has_value() == b.has_value());
    if (!a) continue;
    CHECK(a->same_placement(*b));
    CHECK(a->payoff() == b->payoff());
    CHECK(feasible_alone(*a, r, g, ctx));
    CHECK(a->hosts.front() == r.source);
    CHECK(a->hosts.back() == r.destination);
  }
}

TEST_CASE("viterbi rejects a path with the wrong endpoints") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  const ResourceUsage usage(g);
  const auto servers = idle_servers(g);
  auto r = UserRequest::chain(0, 0, 1, {vnf(4, 4, 10)}, {10, 10});
  r.max_delay = 50;
  const Path& wrong = g.k_shortest_paths(0, 2, 1)[0];
  CHECK_FALSE(viterbi_place(PlacementInput{r, g, usage, servers}, wrong, PlacementConfig{}));
  PlacementConfig bad;
  bad.d = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
