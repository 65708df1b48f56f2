#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracle.hpp"
#include "sfcgame/topology.hpp"

using namespace sfcgame;

namespace {

SatelliteNode plain_node(int id) {
  SatelliteNode n;
  n.id = id;
  return n;
}

NetworkGraph ring4(double km = 500.0) {
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back(plain_node(i));
  std::vector<Link> links;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    links.push_back(Link{std::min(i, j), std::max(i, j), 100.0, link_delay(km), km});
  }
  return NetworkGraph(std::move(nodes), std::move(links));
}

// Random connected graph with up to `n` nodes and a spanning tree backbone.
NetworkGraph random_graph(std::mt19937_64& rng, int n, int extra) {
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(plain_node(i));
  std::set<std::pair<int, int>> used;
  std::vector<Link> links;
  auto km = [&] { return static_cast<double>(std::uniform_int_distribution<int>(1, 4)(rng) * 200); };
  auto add = [&](int a, int b) {
    if (a == b || !used.insert(std::minmax(a, b)).second) return;
    const double d = km();
    links.push_back(Link{std::min(a, b), std::max(a, b), 100.0, link_delay(d), d});
  };
  for (int i = 1; i < n; ++i) add(i, std::uniform_int_distribution<int>(0, i - 1)(rng));
  for (int e = 0; e < extra; ++e)
    add(std::uniform_int_distribution<int>(0, n - 1)(rng),
        std::uniform_int_distribution<int>(0, n - 1)(rng));
  return NetworkGraph(std::move(nodes), std::move(links));
}

}  // namespace

TEST_CASE("link delay is light-speed propagation") {
  CHECK(link_delay(600.0) == doctest::Approx(2.0014).epsilon(1e-4));
  CHECK(link_delay(400.0) == doctest::Approx(1.3343).epsilon(1e-4));
  CHECK(link_delay(299792.458) == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("constellation wiring") {
  SUBCASE("3 planes of 2 merge parallel links") {
    const auto g = build_constellation(3, 2, 600, 400, NodeTemplate{}, 100);
    CHECK(g.node_count() == 6);
    CHECK(g.link_count() == 9);
    int intra = 0, inter = 0;
    for (const auto& l : g.links()) {
      if (l.distance == 600.0) ++intra;
      if (l.distance == 400.0) ++inter;
    }
    CHECK(intra == 3);
    CHECK(inter == 6);
    for (int n = 0; n < 6; ++n) CHECK(g.degree(n) == 3);
    CHECK(g.total_bandwidth() == doctest::Approx(900.0));
    CHECK(g.total_max_power() == doctest::Approx(2490.0));
  }
  SUBCASE("3 planes of 5 form a degree-4 torus") {
    const auto g = build_constellation(3, 5, 600, 400, NodeTemplate{}, 100);
    CHECK(g.node_count() == 15);
    CHECK(g.link_count() == 30);
    for (int n = 0; n < 15; ++n) CHECK(g.degree(n) == 4);
  }
  SUBCASE("single satellite") {
    const auto g = build_constellation(1, 1, 600, 400, NodeTemplate{}, 100);
    CHECK(g.node_count() == 1);
    CHECK(g.link_count() == 0);
  }
  SUBCASE("every supported size is connected") {
    for (int per : {2, 3, 4, 5}) CHECK(build_constellation(3, per, 600, 400, {}, 100).connected());
  }
  CHECK(build_constellation(3, 3, 600, 400, {}, 100).name(7) == "Sat8");
  CHECK_THROWS_AS(build_constellation(0, 2, 600, 400, {}, 100), ConfigError);
}

TEST_CASE("graph validation") {
  std::vector<SatelliteNode> nodes{plain_node(0), plain_node(1)};
  CHECK_THROWS_AS(NetworkGraph(nodes, {Link{0, 0, 100, 1, 1}}), ConfigError);
  CHECK_THROWS_AS(NetworkGraph(nodes, {Link{0, 1, 0, 1, 1}}), ConfigError);
  CHECK_THROWS_AS(NetworkGraph(nodes, {Link{0, 1, 100, 1, 1}, Link{1, 0, 100, 1, 1}}),
                  ConfigError);
  CHECK_THROWS_AS(NetworkGraph({plain_node(1)}, {}), ConfigError);
}

TEST_CASE("k shortest paths on a ring") {
  const auto g = ring4();
  const auto ps = g.k_shortest_paths(0, 2, 2);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(ps[1].nodes == std::vector<NodeId>{0, 3, 2});
  CHECK(ps[0].hop_count() == 2);

  const auto self = g.k_shortest_paths(0, 0, 5);
  REQUIRE(self.size() == 1);
  CHECK(self[0].nodes == std::vector<NodeId>{0});
  CHECK(self[0].total_delay == 0.0);

  // Asking for more than exist returns all of them.
  CHECK(g.k_shortest_paths(0, 2, 10).size() == 2);
}

TEST_CASE("disconnected endpoints raise NoPathError") {
  const NetworkGraph g({plain_node(0), plain_node(1)}, {});
  CHECK_THROWS_AS(g.k_shortest_paths(0, 1, 1), NoPathError);
  CHECK_THROWS_AS(g.candidate_sd_paths(0, 1, 1), NoPathError);
  CHECK(std::isinf(g.shortest_delay(0, 1)));
}

TEST_CASE("k shortest paths match exhaustive enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const auto g = random_graph(rng, n, std::uniform_int_distribution<int>(0, 8)(rng));
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        const auto want = oracle::ranked_simple_paths(g, s, t);
        const auto got = g.k_shortest_paths(s, t, static_cast<int>(want.size()) + 3);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
          CHECK(got[i].nodes == want[i].nodes);
          CHECK(got[i].total_delay == doctest::Approx(want[i].delay).epsilon(1e-12));
          if (i > 0) CHECK(got[i - 1].total_delay <= got[i].total_delay + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("smaller d gives a prefix of larger d") {
  const auto g = build_constellation(3, 4, 600, 400, {}, 100);
  for (int s = 0; s < g.node_count(); ++s) {
    const auto big = g.k_shortest_paths(s, (s + 5) % g.node_count(), 12);
    for (int d = 1; d <= 12; ++d) {
      const auto small = g.k_shortest_paths(s, (s + 5) % g.node_count(), d);
      REQUIRE(small.size() <= big.size());
      for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == big[i]);
    }
  }
}

TEST_CASE("candidate paths for coinciding endpoints are out-and-back walks") {
  // Sat8 (id 7) with Sat5 (id 4) as its unique nearest neighbour.
  std::vector<SatelliteNode> nodes;
  for (int i = 0; i < 9; ++i) nodes.push_back(plain_node(i));
  auto link = [](int a, int b, double km) { return Link{a, b, 100.0, link_delay(km), km}; };
  const NetworkGraph g(nodes, {link(4, 7, 400), link(6, 7, 600), link(7, 8, 600), link(1, 4, 600),
                               link(0, 1, 600), link(2, 5, 400), link(3, 6, 400), link(5, 8, 600),
                               link(0, 3, 400), link(0, 2, 600)});

  const auto two = g.candidate_sd_paths(7, 7, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].nodes == std::vector<NodeId>{7});
  CHECK(two[1].nodes == std::vector<NodeId>{7, 4, 7});
  CHECK(two[1].total_delay == doctest::Approx(2 * link_delay(400)).epsilon(1e-12));
  CHECK(two[1].links.size() == 2);
  CHECK(two[1].links[0] == two[1].links[1]);

  CHECK(g.candidate_sd_paths(7, 7, 1).size() == 1);

  const auto many = g.candidate_sd_paths(7, 7, 9);
  REQUIRE(many.size() == 9);
  for (std::size_t i = 1; i < many.size(); ++i) {
    CHECK(many[i - 1].total_delay <= many[i].total_delay + 1e-9);
    CHECK(many[i].source() == 7);
    CHECK(many[i].destination() == 7);
    const NodeId turn = many[i].nodes[many[i].nodes.size() / 2];
    CHECK(many[i].total_delay == doctest::Approx(2 * g.shortest_delay(7, turn)).epsilon(1e-12));
  }

  // Distinct endpoints behave exactly like k_shortest_paths.
  const auto c = g.candidate_sd_paths(0, 8, 3);
  const auto k = g.k_shortest_paths(0, 8, 3);
  REQUIRE(c.size() == k.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == k[i]);
}

TEST_CASE("path queries are deterministic and survive graph copies") {
  const auto g = build_constellation(3, 3, 600, 400, {}, 100);
  const auto a = g.k_shortest_paths(0, 4, 6);
  const NetworkGraph copy = g;
  const auto b = copy.k_shortest_paths(0, 4, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  // Views stay valid after later queries grow the cache.
  const auto first = g.k_shortest_paths(1, 5, 2);
  const auto nodes = first[0].nodes;
  (void)g.k_shortest_paths(1, 5, 20);
  CHECK(first[0].nodes == nodes);
}
