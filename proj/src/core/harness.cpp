#include "sfcgame/harness.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sfcgame {

using nlohmann::json;

namespace {

// Shortest decimal that round-trips, so CSV output is bit-stable.
std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_range(const json& j, const char* key, int& lo, int& hi) {
  if (!j.contains(key)) return;
  const json& r = j.at(key);
  if (!r.is_array() || r.size() != 2)
    throw ConfigError(std::string("'") + key + "' must be a [min, max] pair");
  lo = r[0].get<int>();
  hi = r[1].get<int>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  std::set<std::string> known(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

bool hosts_on(const UserRequest& r, const Strategy& s, NodeId n) {
  if (!s.allocated) return false;
  for (std::size_t i = 0; i < s.hosts.size(); ++i)
    if (s.hosts[i] == n && !r.vnfs[i].is_pseudo) return true;
  return false;
}

json strategy_json(const Strategy& s) {
  json routes = json::array();
  for (const auto& r : s.routes) routes.push_back(r.nodes);
  json j{{"request_id", s.request_id}, {"allocated", s.allocated}, {"hosts", s.hosts},
         {"routes", routes}};
  if (s.cost)
    j["cost"] = {{"bw", s.cost->bw}, {"power", s.cost->power}, {"delay", s.cost->delay},
                 {"payoff", s.cost->payoff}};
  return j;
}

// Places one slot and advances the server states; shared by batch and online.
void run_slot(const NetworkGraph& graph, const SimulationConfig& config, Algorithm algorithm,
              std::uint64_t seed, int slot, std::vector<UserRequest> requests,
              std::vector<ServerState>& states, std::vector<Commitment>& commitments,
              RunResult& run) {
  std::erase_if(commitments, [slot](const Commitment& c) { return c.end_slot <= slot; });
  const SlotContext ctx = SlotContext::make(graph, slot, states, commitments, config.idle_charge,
                                            config.coupling);
  auto check = [&](const StrategyProfile& profile) {
    ++run.checks;
    auto v = check_feasibility(profile, requests, graph, ctx);
    run.violations.insert(run.violations.end(), v.begin(), v.end());
  };
  GameResult solved = solve_slot(requests, graph, ctx, config, algorithm, check);
  check(solved.profile);

  for (const auto& r : requests) {
    const Strategy* s = solved.profile.find(r.id);
    if (s && s->allocated) commitments.push_back({r, *s, slot + r.duration_slots});
  }

  SlotRecord rec;
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    double cpu = 0.0;
    for (const auto& c : commitments)
      for (std::size_t i = 0; i < c.strategy.hosts.size(); ++i)
        if (c.strategy.allocated && c.strategy.hosts[i] == n) cpu += c.request.vnfs[i].cpu;
    bool occupied = false;
    for (const auto& c : commitments) occupied = occupied || hosts_on(c.request, c.strategy, n);
    const auto& node = graph.node(n);
    auto& st = states[static_cast<std::size_t>(n)];
    st = step_server_state(st, node.power, occupied, slot);
    rec.servers.push_back(
        {n, st, cpu, server_slot_power(st, node.power, cpu, node.capacity.cpu)});
  }
  ++run.checks;
  auto sv = check_server_states(states, graph, slot);
  run.violations.insert(run.violations.end(), sv.begin(), sv.end());

  const int iterations =
      algorithm == Algorithm::Pgra ? static_cast<int>(solved.trace.iterations.size()) : 1;
  rec.metrics = slot_metrics(solved.profile, requests.size(), slot, algorithm, seed, iterations);
  rec.requests = std::move(requests);
  rec.profile = std::move(solved.profile);
  rec.trace = std::move(solved.trace);
  run.slots.push_back(std::move(rec));
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Pgra: return "pgra";
    case Algorithm::Viterbi: return "viterbi";
    case Algorithm::Greedy: return "greedy";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "pgra") return Algorithm::Pgra;
  if (s == "viterbi") return Algorithm::Viterbi;
  if (s == "greedy") return Algorithm::Greedy;
  throw ConfigError("algorithm must be pgra, viterbi or greedy, got '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::Batch ? "batch" : "online"; }

Mode mode_from_string(const std::string& s) {
  if (s == "batch") return Mode::Batch;
  if (s == "online") return Mode::Online;
  throw ConfigError("mode must be batch or online, got '" + s + "'");
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

void SimulationConfig::validate() const {
  if (topology.planes < 1 || topology.sats_per_plane < 1)
    throw ConfigError("topology needs planes >= 1 and sats_per_plane >= 1");
  if (!(topology.intra_plane_km > 0 && topology.inter_plane_km > 0 && topology.link_bw > 0))
    throw ConfigError("link distances and bandwidth must be > 0");
  topology.node.power.validate();
  workload.validate();
  game.validate();
  if (slots < 1) throw ConfigError("slots must be >= 1");
  if (requests < 0) throw ConfigError("requests must be >= 0");
  if (requests_per_slot_min < 0 || requests_per_slot_max < requests_per_slot_min)
    throw ConfigError("requests_per_slot must be a non-empty range of counts");
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
}

NetworkGraph SimulationConfig::build_graph() const {
  NetworkGraph g = build_constellation(topology.planes, topology.sats_per_plane,
                                       topology.intra_plane_km, topology.inter_plane_km,
                                       topology.node, topology.link_bw);
  if (!g.connected()) throw ConfigError("constellation is not connected");
  return g;
}

void SimulationConfig::set_node_count(int nodes) {
  if (nodes < 3 || nodes % 3 != 0) throw ConfigError("node count must be a positive multiple of 3");
  topology.planes = 3;
  topology.sats_per_plane = nodes / 3;
}

std::string SimulationConfig::to_json() const {
  const auto& w = workload;
  const auto& pp = topology.node.power;
  json beam = game.placement.beam == kUnbounded ? json(nullptr) : json(game.placement.beam);
  json j{
      {"topology",
       {{"planes", topology.planes},
        {"sats_per_plane", topology.sats_per_plane},
        {"intra_plane_km", topology.intra_plane_km},
        {"inter_plane_km", topology.inter_plane_km},
        {"link_bw", topology.link_bw}}},
      {"server",
       {{"cpu", topology.node.capacity.cpu},
        {"memory", topology.node.capacity.memory},
        {"p_idle", pp.p_idle},
        {"p_max", pp.p_max},
        {"t_idle_max", pp.t_idle_max},
        {"t_off_min", pp.t_off_min}}},
      {"workload",
       {{"vnf_count", {w.vnf_count_min, w.vnf_count_max}},
        {"cpu", {w.cpu_min, w.cpu_max}},
        {"memory", {w.memory_min, w.memory_max}},
        {"exec_time", {w.exec_time_min, w.exec_time_max}},
        {"bandwidth", {w.bandwidth_min, w.bandwidth_max}},
        {"duration", {w.duration_min, w.duration_max}},
        {"delay_budget_paths", w.delay_budget_paths}}},
      {"weights",
       {{"bw", game.placement.weights.bw},
        {"power", game.placement.weights.power},
        {"delay", game.placement.weights.delay}}},
      {"game",
       {{"k_max", game.k_max},
        {"epsilon", game.epsilon},
        {"d", game.placement.d},
        {"beam", beam},
        {"threads", game.threads}}},
      {"energy", {{"idle_charge", to_string(idle_charge)}, {"coupling", to_string(coupling)}}},
      {"mode", to_string(mode)},
      {"slots", slots},
      {"requests", requests},
      {"requests_per_slot", {requests_per_slot_min, requests_per_slot_max}},
      {"seeds", seeds},
  };
  return j.dump(2);
}

SimulationConfig SimulationConfig::from_json(const std::string& text) {
  SimulationConfig c;
  try {
    const json j = json::parse(text);
    reject_unknown(j,
                   {"topology", "server", "workload", "weights", "game", "energy", "mode",
                    "slots", "requests", "requests_per_slot", "seeds"},
                   "config");
    if (j.contains("topology")) {
      const json& t = j["topology"];
      reject_unknown(t, {"planes", "sats_per_plane", "intra_plane_km", "inter_plane_km", "link_bw"},
                     "topology");
      read(t, "planes", c.topology.planes);
      read(t, "sats_per_plane", c.topology.sats_per_plane);
      read(t, "intra_plane_km", c.topology.intra_plane_km);
      read(t, "inter_plane_km", c.topology.inter_plane_km);
      read(t, "link_bw", c.topology.link_bw);
    }
    if (j.contains("server")) {
      const json& s = j["server"];
      reject_unknown(s, {"cpu", "memory", "p_idle", "p_max", "t_idle_max", "t_off_min"}, "server");
      read(s, "cpu", c.topology.node.capacity.cpu);
      read(s, "memory", c.topology.node.capacity.memory);
      read(s, "p_idle", c.topology.node.power.p_idle);
      read(s, "p_max", c.topology.node.power.p_max);
      read(s, "t_idle_max", c.topology.node.power.t_idle_max);
      read(s, "t_off_min", c.topology.node.power.t_off_min);
    }
    if (j.contains("workload")) {
      const json& w = j["workload"];
      reject_unknown(w,
                     {"vnf_count", "cpu", "memory", "exec_time", "bandwidth", "duration",
                      "delay_budget_paths"},
                     "workload");
      auto& r = c.workload;
      read_range(w, "vnf_count", r.vnf_count_min, r.vnf_count_max);
      read_range(w, "cpu", r.cpu_min, r.cpu_max);
      read_range(w, "memory", r.memory_min, r.memory_max);
      read_range(w, "exec_time", r.exec_time_min, r.exec_time_max);
      read_range(w, "bandwidth", r.bandwidth_min, r.bandwidth_max);
      read_range(w, "duration", r.duration_min, r.duration_max);
      read(w, "delay_budget_paths", r.delay_budget_paths);
    }
    if (j.contains("weights")) {
      const json& w = j["weights"];
      reject_unknown(w, {"bw", "power", "delay"}, "weights");
      read(w, "bw", c.game.placement.weights.bw);
      read(w, "power", c.game.placement.weights.power);
      read(w, "delay", c.game.placement.weights.delay);
    }
    if (j.contains("game")) {
      const json& g = j["game"];
      reject_unknown(g, {"k_max", "epsilon", "d", "beam", "threads"}, "game");
      read(g, "k_max", c.game.k_max);
      read(g, "epsilon", c.game.epsilon);
      read(g, "d", c.game.placement.d);
      if (g.contains("beam")) {
        if (g["beam"].is_null()) {
          c.game.placement.beam = kUnbounded;
        } else {
          const long b = g["beam"].get<long>();
          if (b < 1) throw ConfigError("beam width must be >= 1");
          c.game.placement.beam = static_cast<std::size_t>(b);
        }
      }
      read(g, "threads", c.game.threads);
    }
    if (j.contains("energy")) {
      const json& e = j["energy"];
      reject_unknown(e, {"idle_charge", "coupling"}, "energy");
      if (e.contains("idle_charge")) c.idle_charge = idle_charge_from_string(e["idle_charge"]);
      if (e.contains("coupling")) c.coupling = energy_coupling_from_string(e["coupling"]);
    }
    if (j.contains("mode")) c.mode = mode_from_string(j["mode"]);
    read(j, "slots", c.slots);
    read(j, "requests", c.requests);
    read_range(j, "requests_per_slot", c.requests_per_slot_min, c.requests_per_slot_max);
    read(j, "seeds", c.seeds);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

SimulationConfig SimulationConfig::load(const std::string& path) {
  return from_json(read_file(path));
}

std::vector<SlotMetrics> RunResult::metrics() const {
  std::vector<SlotMetrics> out;
  for (const auto& s : slots) out.push_back(s.metrics);
  return out;
}

GameResult solve_slot(std::span<const UserRequest> requests, const NetworkGraph& graph,
                      const SlotContext& ctx, const SimulationConfig& config, Algorithm algorithm,
                      const std::function<void(const StrategyProfile&)>& after_commit) {
  if (algorithm == Algorithm::Pgra) {
    GameConfig game = config.game;
    if (after_commit) game.on_commit = [&](int, const StrategyProfile& p) { after_commit(p); };
    return pgra_run(requests, graph, ctx, game);
  }

  GameResult result;
  for (const auto& r : requests) result.profile.set(Strategy::unallocated(r.id));
  IterationRecord rec;
  rec.iteration = 1;
  rec.phi_before = 0.0;
  for (const auto& r : requests) {
    const auto s = algorithm == Algorithm::Viterbi
                       ? best_response(r, result.profile, requests, graph, ctx,
                                       config.game.placement)
                       : greedy_place(r, result.profile, requests, graph, ctx,
                                      config.game.placement);
    if (!s) continue;
    result.profile.set(*s);
    ++rec.improving;
    if (after_commit) after_commit(result.profile);
  }
  rec.phi_after = network_payoff(result.profile);
  result.trace.iterations.push_back(rec);
  result.trace.converged = true;
  return result;
}

SlotMetrics slot_metrics(const StrategyProfile& profile, std::size_t request_count, int slot,
                         Algorithm algorithm, std::uint64_t seed, int iterations) {
  SlotMetrics m;
  m.slot = slot;
  m.algorithm = algorithm;
  m.seed = seed;
  m.iterations = iterations;
  m.phi = network_payoff(profile);
  const int allocated = profile.allocated_count();
  m.allocated_fraction =
      request_count == 0 ? 1.0 : static_cast<double>(allocated) / static_cast<double>(request_count);
  if (allocated > 0) {
    for (const auto& [id, s] : profile.strategies) {
      if (!s.allocated || !s.cost) continue;
      m.mean_bw += s.cost->bw;
      m.mean_power += s.cost->power;
      m.mean_delay += s.cost->delay;
    }
    m.mean_bw /= allocated;
    m.mean_power /= allocated;
    m.mean_delay /= allocated;
  }
  return m;
}

RunResult run_batch_detailed(const SimulationConfig& config, Algorithm algorithm,
                             std::uint64_t seed, std::vector<UserRequest> requests) {
  config.validate();
  const NetworkGraph graph = config.build_graph();
  for (const auto& r : requests) {
    r.validate();
    if (r.source < 0 || r.source >= graph.node_count() || r.destination < 0 ||
        r.destination >= graph.node_count())
      throw ConfigError("request " + std::to_string(r.id) + " names an unknown node");
  }
  std::vector<ServerState> states(static_cast<std::size_t>(graph.node_count()),
                                  ServerState::idle_from(0));
  std::vector<Commitment> commitments;
  RunResult run;
  run_slot(graph, config, algorithm, seed, 0, std::move(requests), states, commitments, run);
  return run;
}

RunResult run_batch_detailed(const SimulationConfig& config, Algorithm algorithm,
                             std::uint64_t seed) {
  config.validate();
  const NetworkGraph graph = config.build_graph();
  return run_batch_detailed(config, algorithm, seed,
                            generate_requests(config.requests, graph, config.workload, seed, 0));
}

SlotMetrics run_batch(const SimulationConfig& config, Algorithm algorithm, std::uint64_t seed) {
  return run_batch_detailed(config, algorithm, seed).slots.front().metrics;
}

RunResult run_online_detailed(const SimulationConfig& config, Algorithm algorithm,
                              std::uint64_t seed) {
  config.validate();
  const NetworkGraph graph = config.build_graph();
  std::vector<ServerState> states(static_cast<std::size_t>(graph.node_count()),
                                  ServerState::idle_from(0));
  std::vector<Commitment> commitments;
  RunResult run;
  RequestId next_id = 0;
  for (int t = 0; t < config.slots; ++t) {
    std::mt19937_64 rng(derive_seed(seed, seed_stream::kSlotCount, static_cast<std::uint64_t>(t)));
    const int count = std::uniform_int_distribution<int>(config.requests_per_slot_min,
                                                         config.requests_per_slot_max)(rng);
    auto requests = generate_requests(count, graph, config.workload, seed, t, next_id);
    next_id += count;
    run_slot(graph, config, algorithm, seed, t, std::move(requests), states, commitments, run);
  }
  return run;
}

std::vector<SlotMetrics> run_online(const SimulationConfig& config, Algorithm algorithm,
                                    std::uint64_t seed) {
  return run_online_detailed(config, algorithm, seed).metrics();
}

TaguchiResult run_taguchi(const SimulationConfig& config, std::uint64_t seed,
                          const std::vector<int>& d_levels, const std::vector<int>& b_levels,
                          const std::vector<int>& m_values, int repetitions) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  TaguchiResult out;
  for (int m : m_values) {
    for (int d : d_levels) {
      for (int b : b_levels) {
        SimulationConfig c = config;
        c.requests = m;
        c.game.placement.d = d;
        c.game.placement.beam = static_cast<std::size_t>(b);
        TaguchiRow row{d, b, m, 0.0, 0.0};
        for (int r = 0; r < repetitions; ++r) {
          const auto metrics = run_batch(
              c, Algorithm::Pgra,
              derive_seed(seed, seed_stream::kRepetition, static_cast<std::uint64_t>(r)));
          row.mean_phi += metrics.phi;
          row.mean_allocated += metrics.allocated_fraction;
        }
        row.mean_phi /= repetitions;
        row.mean_allocated /= repetitions;
        out.rows.push_back(row);
      }
    }
    auto effect = [&](const char* factor, const std::vector<int>& levels, auto level_of) {
      for (int level : levels) {
        double sum = 0.0;
        int n = 0;
        for (const auto& row : out.rows) {
          if (row.requests != m || level_of(row) != level) continue;
          sum += row.mean_phi;
          ++n;
        }
        out.effects.push_back({factor, level, m, n ? sum / n : 0.0});
      }
    };
    effect("d", d_levels, [](const TaguchiRow& r) { return r.d; });
    effect("beam", b_levels, [](const TaguchiRow& r) { return r.beam; });
  }
  return out;
}

void emit_metrics(const std::vector<SlotMetrics>& rows, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << kMetricsCsvHeader << '\n';
    for (const auto& m : rows)
      out << m.slot << ',' << to_string(m.algorithm) << ',' << m.seed << ',' << num(m.phi) << ','
          << num(m.allocated_fraction) << ',' << num(m.mean_bw) << ',' << num(m.mean_power)
          << ',' << num(m.mean_delay) << ',' << m.iterations << '\n';
    return;
  }
  json arr = json::array();
  for (const auto& m : rows)
    arr.push_back({{"slot", m.slot},
                   {"algorithm", to_string(m.algorithm)},
                   {"seed", m.seed},
                   {"phi", m.phi},
                   {"allocated_fraction", m.allocated_fraction},
                   {"mean_bw", m.mean_bw},
                   {"mean_power", m.mean_power},
                   {"mean_delay", m.mean_delay},
                   {"iterations", m.iterations}});
  out << arr.dump(2) << '\n';
}

std::vector<SlotMetrics> parse_metrics_json(const std::string& text) {
  std::vector<SlotMetrics> out;
  try {
    for (const auto& j : json::parse(text)) {
      SlotMetrics m;
      m.slot = j.at("slot").get<int>();
      m.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
      m.seed = j.at("seed").get<std::uint64_t>();
      m.phi = j.at("phi").get<double>();
      m.allocated_fraction = j.at("allocated_fraction").get<double>();
      m.mean_bw = j.at("mean_bw").get<double>();
      m.mean_power = j.at("mean_power").get<double>();
      m.mean_delay = j.at("mean_delay").get<double>();
      m.iterations = j.at("iterations").get<int>();
      out.push_back(m);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid metrics JSON: ") + e.what());
  }
  return out;
}

void emit_taguchi(const TaguchiResult& result, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << "table,d,beam,requests,mean_phi,mean_allocated\n";
    for (const auto& r : result.rows)
      out << "run," << r.d << ',' << r.beam << ',' << r.requests << ',' << num(r.mean_phi) << ','
          << num(r.mean_allocated) << '\n';
    for (const auto& e : result.effects) {
      out << "effect_" << e.factor << ',';
      if (e.factor == "d") out << e.level << ",,";
      else out << ',' << e.level << ',';
      out << e.requests << ',' << num(e.mean_phi) << ",\n";
    }
    return;
  }
  json rows = json::array(), effects = json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"d", r.d}, {"beam", r.beam}, {"requests", r.requests},
                    {"mean_phi", r.mean_phi}, {"mean_allocated", r.mean_allocated}});
  for (const auto& e : result.effects)
    effects.push_back({{"factor", e.factor}, {"level", e.level}, {"requests", e.requests},
                       {"mean_phi", e.mean_phi}});
  out << json{{"rows", rows}, {"effects", effects}}.dump(2) << '\n';
}

void emit_trace(const RunResult& run, Format format, std::ostream& out) {
  json arr = json::array();
  if (format == Format::Csv) out << "slot,iteration,winner,phi,improvement,improving\n";
  for (const auto& s : run.slots) {
    for (const auto& it : s.trace.iterations) {
      const double gain = it.phi_after - it.phi_before;
      if (format == Format::Csv) {
        out << s.metrics.slot << ',' << it.iteration << ','
            << (it.winner ? std::to_string(*it.winner) : "") << ',' << num(it.phi_after) << ','
            << num(gain) << ',' << it.improving << '\n';
      } else {
        arr.push_back({{"slot", s.metrics.slot},
                       {"iteration", it.iteration},
                       {"winner", it.winner ? json(*it.winner) : json(nullptr)},
                       {"phi", it.phi_after},
                       {"improvement", gain},
                       {"improving", it.improving}});
      }
    }
  }
  if (format == Format::Json) out << arr.dump(2) << '\n';
}

void emit_costs(const RunResult& run, Format format, std::ostream& out) {
  json arr = json::array();
  if (format == Format::Csv) out << "slot,request_id,bw,power,delay,payoff,allocated\n";
  for (const auto& s : run.slots) {
    for (const auto& [id, st] : s.profile.strategies) {
      const CostBreakdown c = st.cost.value_or(CostBreakdown{});
      if (format == Format::Csv) {
        out << s.metrics.slot << ',' << id << ',' << num(c.bw) << ',' << num(c.power) << ','
            << num(c.delay) << ',' << num(st.payoff()) << ',' << (st.allocated ? 1 : 0) << '\n';
      } else {
        json j = strategy_json(st);
        j["slot"] = s.metrics.slot;
        arr.push_back(j);
      }
    }
  }
  if (format == Format::Json) out << arr.dump(2) << '\n';
}

void emit_timeline(const RunResult& run, Format format, std::ostream& out) {
  json arr = json::array();
  if (format == Format::Csv) out << "slot,node,mode,in_setup,cpu_used,power\n";
  for (const auto& s : run.slots) {
    for (const auto& sv : s.servers) {
      if (format == Format::Csv) {
        out << s.metrics.slot << ',' << sv.node << ',' << to_string(sv.state.mode) << ','
            << (sv.state.in_setup ? 1 : 0) << ',' << num(sv.cpu_used) << ',' << num(sv.power)
            << '\n';
      } else {
        arr.push_back({{"slot", s.metrics.slot},
                       {"node", sv.node},
                       {"mode", to_string(sv.state.mode)},
                       {"in_setup", sv.state.in_setup},
                       {"cpu_used", sv.cpu_used},
                       {"power", sv.power}});
      }
    }
  }
  if (format == Format::Json) out << arr.dump(2) << '\n';
}

std::string graph_to_json(const NetworkGraph& graph) {
  json nodes = json::array(), links = json::array();
  for (const auto& n : graph.nodes())
    nodes.push_back({{"id", n.id},
                     {"name", graph.name(n.id)},
                     {"plane", n.plane},
                     {"slot_in_plane", n.slot_in_plane},
                     {"cpu", n.capacity.cpu},
                     {"memory", n.capacity.memory},
                     {"p_idle", n.power.p_idle},
                     {"p_max", n.power.p_max}});
  for (const auto& l : graph.links())
    links.push_back({{"a", l.a},
                     {"b", l.b},
                     {"bandwidth", l.bandwidth_capacity},
                     {"delay_ms", l.propagation_delay},
                     {"distance_km", l.distance}});
  return json{{"nodes", nodes}, {"links", links}}.dump(2);
}

std::string requests_to_json(const std::vector<UserRequest>& requests) {
  json arr = json::array();
  for (const auto& r : requests) {
    json vnfs = json::array(), bws = json::array();
    for (int i = 1; i + 1 < static_cast<int>(r.vnfs.size()); ++i)
      vnfs.push_back({{"cpu", r.vnfs[i].cpu},
                      {"memory", r.vnfs[i].memory},
                      {"exec_time", r.vnfs[i].exec_time}});
    for (const auto& e : r.edges) bws.push_back(e.bandwidth);
    arr.push_back({{"id", r.id},
                   {"source", r.source},
                   {"destination", r.destination},
                   {"vnfs", vnfs},
                   {"bandwidth", bws},
                   {"max_delay", r.max_delay},
                   {"arrival_slot", r.arrival_slot},
                   {"duration_slots", r.duration_slots}});
  }
  return arr.dump(2);
}

std::vector<UserRequest> requests_from_json(const std::string& text) {
  std::vector<UserRequest> out;
  try {
    for (const auto& j : json::parse(text)) {
      std::vector<VnfSpec> vnfs;
      for (const auto& v : j.at("vnfs"))
        vnfs.push_back(VnfSpec{v.at("cpu").get<double>(), v.at("memory").get<double>(),
                               v.at("exec_time").get<double>(), false});
      UserRequest r = UserRequest::chain(
          j.at("id").get<RequestId>(), j.at("source").get<NodeId>(),
          j.at("destination").get<NodeId>(), vnfs, j.at("bandwidth").get<std::vector<double>>(),
          j.value("duration_slots", 1), j.value("arrival_slot", 0));
      r.max_delay = j.at("max_delay").get<double>();
      r.validate();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid workload JSON: ") + e.what());
  }
  return out;
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write(f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

}  // namespace sfcgame
