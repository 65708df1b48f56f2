#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfcgame/costing.hpp"
#include "sfcgame/game.hpp"
#include "sfcgame/topology.hpp"
#include "sfcgame/workload.hpp"

namespace sfcgame {

enum class Algorithm { Pgra, Viterbi, Greedy };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

enum class Mode { Batch, Online };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

enum class Format { Csv, Json };
Format format_from_string(const std::string& s);

struct TopologyConfig {
  int planes = 3;
  int sats_per_plane = 2;
  double intra_plane_km = 600.0;
  double inter_plane_km = 400.0;
  double link_bw = 100.0;  // Mbps
  NodeTemplate node;
};

struct SimulationConfig {
  TopologyConfig topology;
  WorkloadRanges workload;
  GameConfig game;  // game.placement.weights are the payoff weights
  IdleCharge idle_charge = IdleCharge::Once;
  EnergyCoupling coupling = EnergyCoupling::Separable;
  Mode mode = Mode::Batch;
  int slots = 50;                // online horizon
  int requests = 10;             // batch request count M
  int requests_per_slot_min = 5;
  int requests_per_slot_max = 10;
  std::vector<std::uint64_t> seeds{1};

  void validate() const;
  NetworkGraph build_graph() const;
  /// Three planes with nodes/3 satellites each.
  void set_node_count(int nodes);

  std::string to_json() const;
  static SimulationConfig from_json(const std::string& text);
  static SimulationConfig load(const std::string& path);
};

struct SlotMetrics {
  int slot = 0;
  Algorithm algorithm = Algorithm::Pgra;
  std::uint64_t seed = 0;
  double phi = 0.0;
  double allocated_fraction = 1.0;
  double mean_bw = 0.0;
  double mean_power = 0.0;
  double mean_delay = 0.0;
  int iterations = 0;

  bool operator==(const SlotMetrics&) const = default;
};

/// Per-server state after a slot.
struct ServerSample {
  NodeId node = 0;
  ServerState state;
  double cpu_used = 0.0;
  double power = 0.0;  // W
};

struct SlotRecord {
  SlotMetrics metrics;
  std::vector<UserRequest> requests;
  StrategyProfile profile;
  GameTrace trace;
  std::vector<ServerSample> servers;
};

struct RunResult {
  std::vector<SlotRecord> slots;
  long checks = 0;  // feasibility checks performed
  std::vector<Violation> violations;

  std::vector<SlotMetrics> metrics() const;
};

/// Places one slot's requests. Baselines place each request once in id
/// order; every commit is checked for feasibility.
GameResult solve_slot(std::span<const UserRequest> requests, const NetworkGraph& graph,
                      const SlotContext& ctx, const SimulationConfig& config, Algorithm algorithm,
                      const std::function<void(const StrategyProfile&)>& after_commit = {});

SlotMetrics slot_metrics(const StrategyProfile& profile, std::size_t request_count, int slot,
                         Algorithm algorithm, std::uint64_t seed, int iterations);

/// M = config.requests generated at slot 0 on a fresh network.
RunResult run_batch_detailed(const SimulationConfig& config, Algorithm algorithm,
                             std::uint64_t seed);
/// Batch run over a given request list instead of a generated one.
RunResult run_batch_detailed(const SimulationConfig& config, Algorithm algorithm,
                             std::uint64_t seed, std::vector<UserRequest> requests);
SlotMetrics run_batch(const SimulationConfig& config, Algorithm algorithm, std::uint64_t seed);

RunResult run_online_detailed(const SimulationConfig& config, Algorithm algorithm,
                              std::uint64_t seed);
std::vector<SlotMetrics> run_online(const SimulationConfig& config, Algorithm algorithm,
                                    std::uint64_t seed);

struct TaguchiRow {
  int d = 0;
  int beam = 0;
  int requests = 0;
  double mean_phi = 0.0;
  double mean_allocated = 0.0;
};

struct TaguchiEffect {
  std::string factor;  // "d" or "beam"
  int level = 0;
  int requests = 0;
  double mean_phi = 0.0;
};

struct TaguchiResult {
  std::vector<TaguchiRow> rows;
  std::vector<TaguchiEffect> effects;
};

/// Every (d, B) level pair for each request count, averaged over
/// `repetitions` batch runs. Repetition r uses derive_seed(seed,
/// kRepetition, r) for every pair.
TaguchiResult run_taguchi(const SimulationConfig& config, std::uint64_t seed,
                          const std::vector<int>& d_levels = {1, 2, 4, 8},
                          const std::vector<int>& b_levels = {1, 2, 4, 8},
                          const std::vector<int>& m_values = {10, 20, 30},
                          int repetitions = 10);

inline constexpr const char* kMetricsCsvHeader =
    "slot,algorithm,seed,phi,allocated_fraction,mean_bw,mean_power,mean_delay,iterations";

void emit_metrics(const std::vector<SlotMetrics>& rows, Format format, std::ostream& out);
std::vector<SlotMetrics> parse_metrics_json(const std::string& text);
void emit_taguchi(const TaguchiResult& result, Format format, std::ostream& out);
void emit_trace(const RunResult& run, Format format, std::ostream& out);
void emit_costs(const RunResult& run, Format format, std::ostream& out);
void emit_timeline(const RunResult& run, Format format, std::ostream& out);

std::string graph_to_json(const NetworkGraph& graph);
std::string requests_to_json(const std::vector<UserRequest>& requests);
std::vector<UserRequest> requests_from_json(const std::string& text);

/// Writes through `write` to `path`, or to stdout when path is empty or
/// "-". Throws IoError naming the path.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& write);
std::string read_file(const std::string& path);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick property suites over seeded instances built from `config`.
std::vector<CheckResult> run_property_checks(const SimulationConfig& config, std::uint64_t seed);

}  // namespace sfcgame
