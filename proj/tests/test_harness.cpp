#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "sfcgame/harness.hpp"

using namespace sfcgame;

namespace {

SimulationConfig small_config() {
  SimulationConfig c;
  c.requests = 6;
  c.slots = 6;
  return c;
}

}  // namespace

TEST_CASE("config json round-trips") {
  SimulationConfig c;
  c.set_node_count(12);
  c.game.placement.d = 3;
  c.game.placement.beam = kUnbounded;
  c.idle_charge = IdleCharge::PerVnf;
  c.coupling = EnergyCoupling::Coupled;
  c.mode = Mode::Online;
  c.seeds = {4, 9};
  c.workload.cpu_max = 6;
  const auto back = SimulationConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.topology.sats_per_plane == 4);
  CHECK(back.game.placement.beam == kUnbounded);
  CHECK(back.seeds == std::vector<std::uint64_t>{4, 9});
  CHECK(back.build_graph().node_count() == 12);

  const auto partial = SimulationConfig::from_json(R"({"requests": 20, "game": {"d": 2}})");
  CHECK(partial.requests == 20);
  CHECK(partial.game.placement.d == 2);
  CHECK(partial.game.placement.beam == 4);

  CHECK_THROWS_AS(SimulationConfig::from_json(R"({"request": 20})"), ConfigError);
  CHECK_THROWS_AS(SimulationConfig::from_json(R"({"game": {"beem": 2}})"), ConfigError);
  CHECK_THROWS_AS(SimulationConfig::from_json("{"), ConfigError);
  CHECK_THROWS_AS(SimulationConfig::from_json(R"({"weights": {"bw": 0.9}})").validate(),
                  ConfigError);
  SimulationConfig bad;
  CHECK_THROWS_AS(bad.set_node_count(7), ConfigError);
}

TEST_CASE("metrics output formats") {
  const auto m = run_batch(small_config(), Algorithm::Pgra, 3);
  std::ostringstream csv;
  emit_metrics({m}, Format::Csv, csv);
  std::istringstream lines(csv.str());
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == kMetricsCsvHeader);
  CHECK(row.rfind("0,pgra,3,", 0) == 0);
  CHECK_FALSE(std::getline(lines, extra));

  std::ostringstream js;
  emit_metrics({m}, Format::Json, js);
  const auto back = parse_metrics_json(js.str());
  REQUIRE(back.size() == 1);
  CHECK(back[0] == m);
}

TEST_CASE("empty batch reports full allocation") {
  SimulationConfig c;
  c.requests = 0;
  const auto m = run_batch(c, Algorithm::Pgra, 1);
  CHECK(m.phi == 0.0);
  CHECK(m.allocated_fraction == 1.0);
}

TEST_CASE("runs are deterministic for a seed and differ across seeds") {
  const auto c = small_config();
  for (Algorithm a : {Algorithm::Pgra, Algorithm::Viterbi, Algorithm::Greedy}) {
    CHECK(run_online(c, a, 5) == run_online(c, a, 5));
    CHECK(run_batch(c, a, 5) == run_batch(c, a, 5));
  }
  CHECK_FALSE(run_online(c, Algorithm::Pgra, 5) == run_online(c, Algorithm::Pgra, 6));
}

TEST_CASE("online runs hold resources for the request duration") {
  auto c = small_config();
  c.slots = 8;
  const auto run = run_online_detailed(c, Algorithm::Pgra, 2);
  REQUIRE(run.slots.size() == 8);
  CHECK(run.violations.empty());
  CHECK(run.checks > 16);

  RequestId expect_id = 0;
  for (std::size_t t = 0; t < run.slots.size(); ++t) {
    const auto& slot = run.slots[t];
    CHECK(slot.requests.size() >= 5);
    CHECK(slot.requests.size() <= 10);
    CHECK(slot.requests.front().id == expect_id);
    expect_id += static_cast<RequestId>(slot.requests.size());
    CHECK(slot.metrics.slot == static_cast<int>(t));

    // CPU in use at the end of slot t comes from requests placed in slots
    // t' <= t whose duration covers slot t + 1.
    std::vector<double> cpu(6, 0.0);
    for (std::size_t u = 0; u <= t; ++u)
      for (const auto& r : run.slots[u].requests) {
        const Strategy* s = run.slots[u].profile.find(r.id);
        if (!s || !s->allocated || static_cast<int>(u) + r.duration_slots <= static_cast<int>(t))
          continue;
        for (std::size_t i = 1; i + 1 < r.vnfs.size(); ++i) cpu[s->hosts[i]] += r.vnfs[i].cpu;
      }
    for (const auto& srv : slot.servers) {
      CHECK(srv.cpu_used == doctest::Approx(cpu[srv.node]).epsilon(1e-12));
      CHECK(srv.cpu_used <= 112.0);
      if (srv.cpu_used > 0) CHECK(srv.state.mode == ServerMode::On);
    }
    CHECK(slot.metrics.phi >= 0.0);
    CHECK(slot.metrics.phi <= static_cast<double>(slot.requests.size()));
  }
}

TEST_CASE("emitters write the documented columns") {
  auto c = small_config();
  c.slots = 2;
  const auto run = run_online_detailed(c, Algorithm::Pgra, 1);
  auto first_line = [](const std::string& s) { return s.substr(0, s.find('\n')); };

  std::ostringstream t, k, tl;
  emit_trace(run, Format::Csv, t);
  emit_costs(run, Format::Csv, k);
  emit_timeline(run, Format::Csv, tl);
  CHECK(first_line(t.str()) == "slot,iteration,winner,phi,improvement,improving");
  CHECK(first_line(k.str()) == "slot,request_id,bw,power,delay,payoff,allocated");
  CHECK(first_line(tl.str()) == "slot,node,mode,in_setup,cpu_used,power");
  // Six nodes in each of two slots.
  const std::string timeline = tl.str();
  CHECK(std::count(timeline.begin(), timeline.end(), '\n') == 13);

  std::ostringstream tj;
  emit_timeline(run, Format::Json, tj);
  CHECK(tj.str().front() == '[');
}

TEST_CASE("request lists round-trip through json") {
  const auto g = SimulationConfig{}.build_graph();
  const auto reqs = generate_requests(4, g, WorkloadRanges{}, 9, 0);
  const auto back = requests_from_json(requests_to_json(reqs));
  REQUIRE(back.size() == reqs.size());
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    CHECK(back[i].id == reqs[i].id);
    CHECK(back[i].max_delay == reqs[i].max_delay);
    CHECK(back[i].vnfs.size() == reqs[i].vnfs.size());
    CHECK(back[i].edges.back().bandwidth == reqs[i].edges.back().bandwidth);
  }
  SimulationConfig c;
  const auto a = run_batch_detailed(c, Algorithm::Pgra, 9, back).metrics();
  const auto b = run_batch_detailed(c, Algorithm::Pgra, 9, reqs).metrics();
  CHECK(a == b);
}

TEST_CASE("taguchi grid shape") {
  SimulationConfig c;
  const auto res = run_taguchi(c, 1, {1, 2}, {1, 4}, {5}, 2);
  CHECK(res.rows.size() == 4);
  CHECK(res.effects.size() == 4);
  for (const auto& r : res.rows) {
    CHECK(r.requests == 5);
    CHECK(r.mean_phi > 0.0);
    CHECK(r.mean_allocated <= 1.0);
  }
  std::ostringstream out;
  emit_taguchi(res, Format::Csv, out);
  CHECK(out.str().rfind("table,d,beam,requests,mean_phi,mean_allocated", 0) == 0);
  CHECK_THROWS_AS(run_taguchi(c, 1, {1}, {1}, {5}, 0), ConfigError);
}

TEST_CASE("property checks pass on the default instance") {
  SimulationConfig c;
  c.slots = 4;
  for (const auto& r : run_property_checks(c, 1)) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("write_output reports unwritable paths") {
  CHECK_THROWS_AS(write_output("/nonexistent-dir/x.csv", [](std::ostream& o) { o << "x"; }),
                  IoError);
  CHECK_THROWS_AS(read_file("/nonexistent-dir/x.json"), IoError);
}
