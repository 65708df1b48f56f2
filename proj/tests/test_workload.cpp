#include <doctest.h>

#include "sfcgame/workload.hpp"

using namespace sfcgame;

namespace {

VnfSpec vnf(double cpu, double mem, double exec) { return VnfSpec{cpu, mem, exec, false}; }

SatelliteNode plain_node(int id) {
  SatelliteNode n;
  n.id = id;
  return n;
}

bool same(const UserRequest& a, const UserRequest& b) {
  if (a.id != b.id || a.source != b.source || a.destination != b.destination ||
      a.max_delay != b.max_delay || a.duration_slots != b.duration_slots ||
      a.arrival_slot != b.arrival_slot || a.vnfs.size() != b.vnfs.size() ||
      a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.vnfs.size(); ++i)
    if (a.vnfs[i].cpu != b.vnfs[i].cpu || a.vnfs[i].memory != b.vnfs[i].memory ||
        a.vnfs[i].exec_time != b.vnfs[i].exec_time)
      return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].bandwidth != b.edges[i].bandwidth) return false;
  return true;
}

}  // namespace

TEST_CASE("chain requests") {
  auto r = UserRequest::chain(3, 0, 1, {vnf(4, 4, 10), vnf(8, 16, 20)}, {10, 20, 30}, 2, 5);
  CHECK(r.vnfs.size() == 4);
  CHECK(r.vnfs.front().is_pseudo);
  CHECK(r.vnfs.back().is_pseudo);
  CHECK(r.real_vnf_count() == 2);
  CHECK(r.edges.size() == 3);
  CHECK(r.edges[2].from_index == 2);
  CHECK(r.edges[2].to_index == 3);
  CHECK(r.total_exec_time() == 30.0);
  r.max_delay = 40.0;
  CHECK_NOTHROW(r.validate());
  r.max_delay = 29.0;
  CHECK_THROWS_AS(r.validate(), ConfigError);
  CHECK_THROWS_AS(UserRequest::chain(0, 0, 1, {vnf(4, 4, 10)}, {10}), ConfigError);
}

TEST_CASE("max acceptable delay") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  SUBCASE("coinciding endpoints with one candidate") {
    auto r = UserRequest::chain(0, 2, 2, {vnf(4, 4, 10), vnf(4, 4, 10)}, {10, 10, 10});
    CHECK(max_acceptable_delay(r, g, 1) == 20.0);
    r.max_delay = 20.0;
    CHECK_NOTHROW(r.validate());
  }
  SUBCASE("mean of two candidate delays") {
    auto link = [](int a, int b, double ms) { return Link{a, b, 100.0, ms, 1.0}; };
    // Paths 0-1 (2 ms) and 0-2-1 (4 ms).
    const NetworkGraph tri({plain_node(0), plain_node(1), plain_node(2)},
                           {link(0, 1, 2.0), link(0, 2, 1.0), link(1, 2, 3.0)});
    const auto r = UserRequest::chain(0, 0, 1, {vnf(4, 4, 10)}, {10, 10});
    CHECK(max_acceptable_delay(r, tri, 2) == doctest::Approx(13.0).epsilon(1e-12));
  }
  SUBCASE("single path") {
    const auto r = UserRequest::chain(0, 0, 1, {vnf(4, 4, 10), vnf(4, 4, 20), vnf(4, 4, 30)},
                                      {10, 10, 10, 10});
    const NetworkGraph two({plain_node(0), plain_node(1)},
                           {Link{0, 1, 100.0, link_delay(600), 600}});
    CHECK(max_acceptable_delay(r, two, 8) == doctest::Approx(62.0014).epsilon(1e-6));
  }
}

TEST_CASE("generated workloads") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  const WorkloadRanges ranges;

  CHECK(generate_requests(0, g, ranges, 1, 0).empty());

  const auto a = generate_requests(10, g, ranges, 42, 0);
  const auto b = generate_requests(10, g, ranges, 42, 0);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same(a[i], b[i]));

  const auto other_slot = generate_requests(10, g, ranges, 42, 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || !same(a[i], other_slot[i]);
  CHECK(differs);

  const auto offset = generate_requests(3, g, ranges, 42, 0, 100);
  CHECK(offset[0].id == 100);
  CHECK(offset[2].id == 102);
}

TEST_CASE("generated values stay in range and have the expected mean") {
  const auto g = build_constellation(3, 2, 600, 400, {}, 100);
  const WorkloadRanges ranges;
  const auto reqs = generate_requests(1000, g, ranges, 7, 0);
  double vnf_total = 0.0;
  bool same_endpoints = false;
  for (const auto& r : reqs) {
    CHECK_NOTHROW(r.validate());
    CHECK(r.real_vnf_count() >= 5);
    CHECK(r.real_vnf_count() <= 10);
    vnf_total += r.real_vnf_count();
    for (int i = 1; i <= r.real_vnf_count(); ++i) {
      const auto& v = r.vnfs[i];
      CHECK((v.cpu >= 4 && v.cpu <= 8));
      CHECK((v.memory >= 4 && v.memory <= 16));
      CHECK((v.exec_time >= 10 && v.exec_time <= 30));
    }
    for (const auto& e : r.edges) CHECK((e.bandwidth >= 10 && e.bandwidth <= 30));
    CHECK((r.duration_slots >= 1 && r.duration_slots <= 4));
    CHECK((r.source >= 0 && r.source < 6));
    CHECK((r.destination >= 0 && r.destination < 6));
    CHECK(r.max_delay >= r.total_exec_time());
    same_endpoints = same_endpoints || r.source == r.destination;
  }
  const double mean = vnf_total / reqs.size();
  CHECK(mean >= 7.2);
  CHECK(mean <= 7.8);
  CHECK(same_endpoints);
}

TEST_CASE("workload range validation") {
  WorkloadRanges r;
  r.cpu_min = 9;
  CHECK_THROWS_AS(r.validate(), ConfigError);
  r = WorkloadRanges{};
  r.delay_budget_paths = 0;
  CHECK_THROWS_AS(r.validate(), ConfigError);
}
