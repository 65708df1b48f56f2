#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sfcgame/harness.hpp"

namespace sfcgame {

namespace {

CheckResult potential_identity(const SimulationConfig& config, std::uint64_t seed) {
  const NetworkGraph graph = config.build_graph();
  const SlotContext ctx = SlotContext::fresh(graph, config.idle_charge, config.coupling);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int triples = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const auto reqs = generate_requests(10, graph, config.workload, seed + inst, 0);
    GameConfig game = config.game;
    game.k_max = std::uniform_int_distribution<int>(1, 10)(rng);
    const StrategyProfile profile = pgra_run(reqs, graph, ctx, game).profile;
    for (const auto& r : reqs) {
      std::vector<Strategy> alts{Strategy::unallocated(r.id)};
      if (auto s = best_response(r, profile, reqs, graph, ctx, game.placement)) alts.push_back(*s);
      if (auto s = greedy_place(r, profile, reqs, graph, ctx, game.placement)) alts.push_back(*s);
      for (const auto& alt : alts) {
        worst = std::max(worst, potential_identity_check(profile, reqs, graph, ctx, r.id, alt,
                                                         game.placement.weights));
        ++triples;
      }
    }
  }
  std::ostringstream d;
  d << triples << " triples, max residual " << worst;
  return {"potential_identity", worst <= 1e-12, d.str()};
}

CheckResult nash_convergence(const SimulationConfig& config, std::uint64_t seed) {
  const NetworkGraph graph = config.build_graph();
  const SlotContext ctx = SlotContext::fresh(graph, config.idle_charge, config.coupling);
  int runs = 0, failures = 0;
  for (int m : {5, 10}) {
    for (int s = 0; s < 3; ++s) {
      const auto reqs = generate_requests(
          m, graph, config.workload, derive_seed(seed, seed_stream::kRepetition, s), 0);
      const GameResult res = pgra_run(reqs, graph, ctx, config.game);
      bool ok = res.trace.converged && is_nash(res.profile, reqs, graph, ctx, config.game);
      for (std::size_t k = 0; k + 1 < res.trace.iterations.size(); ++k)
        ok = ok && res.trace.iterations[k].phi_after > res.trace.iterations[k].phi_before;
      ++runs;
      if (!ok) ++failures;
    }
  }
  return {"nash_convergence", failures == 0,
          std::to_string(runs - failures) + "/" + std::to_string(runs) + " runs converged to Nash"};
}

CheckResult feasibility(const SimulationConfig& config, std::uint64_t seed) {
  SimulationConfig c = config;
  c.slots = std::min(c.slots, 10);
  long checks = 0;
  std::size_t violations = 0;
  std::string first;
  for (Algorithm a : {Algorithm::Pgra, Algorithm::Viterbi, Algorithm::Greedy}) {
    const RunResult run = run_online_detailed(c, a, seed);
    checks += run.checks;
    violations += run.violations.size();
    if (first.empty() && !run.violations.empty())
      first = to_string(run.violations.front().kind) + ": " + run.violations.front().detail;
  }
  std::string detail = std::to_string(checks) + " checks, " + std::to_string(violations) +
                       " violations";
  if (!first.empty()) detail += " (first: " + first + ")";
  return {"feasibility", violations == 0, detail};
}

CheckResult state_machine() {
  const PowerParams pp;
  ServerState st = ServerState::idle_from(0);
  std::vector<std::string> seen;
  for (int slot = 1; slot <= 6; ++slot) {
    st = step_server_state(st, pp, slot == 6, slot);
    seen.push_back(to_string(st.mode) + (st.in_setup ? "+setup" : ""));
  }
  const std::vector<std::string> want{"idle", "idle", "idle", "unavailable_off", "available_off",
                                      "on+setup"};
  const double setup_power = server_slot_power(st, pp, 4.0, 112.0);
  const bool ok = seen == want && setup_power == pp.p_max;
  std::string detail;
  for (const auto& s : seen) detail += (detail.empty() ? "" : " ") + s;
  detail += ", setup slot " + std::to_string(setup_power) + " W";
  return {"power_state_machine", ok, detail};
}

CheckResult determinism(const SimulationConfig& config, std::uint64_t seed) {
  const auto a = run_batch(config, Algorithm::Pgra, seed);
  const auto b = run_batch(config, Algorithm::Pgra, seed);
  return {"determinism", a == b, "two batch runs with seed " + std::to_string(seed)};
}

}  // namespace

std::vector<CheckResult> run_property_checks(const SimulationConfig& config, std::uint64_t seed) {
  config.validate();
  return {potential_identity(config, seed), nash_convergence(config, seed),
          feasibility(config, seed), state_machine(), determinism(config, seed)};
}

}  // namespace sfcgame
