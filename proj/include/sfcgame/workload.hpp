#pragma once

#include <cstdint>
#include <vector>

#include "sfcgame/common.hpp"
#include "sfcgame/topology.hpp"

namespace sfcgame {

struct VnfSpec {
  double cpu = 0.0;        // vCPUs
  double memory = 0.0;     // GB
  double exec_time = 0.0;  // ms
  bool is_pseudo = false;

  static VnfSpec pseudo() { return VnfSpec{0.0, 0.0, 0.0, true}; }
  Resources demand() const { return {cpu, memory}; }
};

struct SfcEdge {
  int from_index = 0;
  int to_index = 1;
  double bandwidth = 0.0;  // Mbps
};

/// One user request: a chain s -> f1 -> ... -> fk -> d. vnfs.front() and
/// vnfs.back() are the pseudo VNFs pinned to source and destination.
struct UserRequest {
  RequestId id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<VnfSpec> vnfs;
  std::vector<SfcEdge> edges;
  double max_delay = 0.0;  // ms
  int arrival_slot = 0;
  int duration_slots = 1;

  int real_vnf_count() const { return static_cast<int>(vnfs.size()) - 2; }
  double total_exec_time() const;

  /// Builds a chain request with the given real VNFs and per-edge
  /// bandwidths (one more than the VNF count). max_delay is left at 0.
  static UserRequest chain(RequestId id, NodeId source, NodeId destination,
                           const std::vector<VnfSpec>& real_vnfs,
                           const std::vector<double>& edge_bandwidths,
                           int duration_slots = 1, int arrival_slot = 0);

  /// Throws ConfigError when a structural invariant is broken.
  void validate() const;
};

/// Closed ranges that generated requests are drawn from uniformly.
struct WorkloadRanges {
  int vnf_count_min = 5, vnf_count_max = 10;
  int cpu_min = 4, cpu_max = 8;
  int memory_min = 4, memory_max = 16;
  int exec_time_min = 10, exec_time_max = 30;
  int bandwidth_min = 10, bandwidth_max = 30;
  int duration_min = 1, duration_max = 4;
  // Number of candidate paths averaged into a request's delay budget.
  int delay_budget_paths = 8;

  void validate() const;
};

/// Σ exec_time of real VNFs plus the mean delay of the request's candidate
/// source-to-destination path set. Throws NoPathError.
double max_acceptable_delay(const UserRequest& request, const NetworkGraph& graph, int d);

/// `count` random requests for `slot`, a pure function of its arguments.
/// Ids run from first_id upward.
std::vector<UserRequest> generate_requests(int count, const NetworkGraph& graph,
                                           const WorkloadRanges& ranges,
                                           std::uint64_t rng_seed, int slot,
                                           RequestId first_id = 0);

}  // namespace sfcgame
