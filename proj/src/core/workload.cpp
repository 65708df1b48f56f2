#include "sfcgame/workload.hpp"

#include <random>

namespace sfcgame {

double UserRequest::total_exec_time() const {
  double total = 0.0;
  for (const auto& v : vnfs)
    if (!v.is_pseudo) total += v.exec_time;
  return total;
}

UserRequest UserRequest::chain(RequestId id, NodeId source, NodeId destination,
                               const std::vector<VnfSpec>& real_vnfs,
                               const std::vector<double>& edge_bandwidths,
                               int duration_slots, int arrival_slot) {
  UserRequest r;
  r.id = id;
  r.source = source;
  r.destination = destination;
  r.vnfs.push_back(VnfSpec::pseudo());
  r.vnfs.insert(r.vnfs.end(), real_vnfs.begin(), real_vnfs.end());
  r.vnfs.push_back(VnfSpec::pseudo());
  if (edge_bandwidths.size() + 1 != r.vnfs.size())
    throw ConfigError("chain request needs one bandwidth per SFC edge");
  for (std::size_t i = 0; i < edge_bandwidths.size(); ++i)
    r.edges.push_back(SfcEdge{static_cast<int>(i), static_cast<int>(i) + 1, edge_bandwidths[i]});
  r.duration_slots = duration_slots;
  r.arrival_slot = arrival_slot;
  return r;
}

void UserRequest::validate() const {
  const std::string who = "request " + std::to_string(id) + ": ";
  if (vnfs.size() < 2 || !vnfs.front().is_pseudo || !vnfs.back().is_pseudo)
    throw ConfigError(who + "chain must start and end with pseudo VNFs");
  for (std::size_t i = 0; i < vnfs.size(); ++i) {
    const auto& v = vnfs[i];
    const bool inner = i > 0 && i + 1 < vnfs.size();
    if (v.is_pseudo != !inner) throw ConfigError(who + "only endpoints may be pseudo VNFs");
    if (v.is_pseudo && (v.cpu != 0 || v.memory != 0 || v.exec_time != 0))
      throw ConfigError(who + "pseudo VNFs carry no demand");
    if (!v.is_pseudo && !(v.cpu > 0 && v.memory > 0 && v.exec_time > 0))
      throw ConfigError(who + "real VNFs need positive cpu, memory and exec_time");
  }
  if (edges.size() + 1 != vnfs.size()) throw ConfigError(who + "|edges| must be |vnfs|-1");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.from_index != static_cast<int>(i) || e.to_index != e.from_index + 1)
      throw ConfigError(who + "edges must form the chain in order");
    if (!(e.bandwidth > 0)) throw ConfigError(who + "edge bandwidth must be > 0");
  }
  if (duration_slots < 1) throw ConfigError(who + "duration_slots must be >= 1");
  if (max_delay < total_exec_time()) throw ConfigError(who + "max_delay below execution time");
}

void WorkloadRanges::validate() const {
  auto check = [](int lo, int hi, int floor, const char* what) {
    if (lo < floor || hi < lo)
      throw ConfigError(std::string("workload range ") + what + " is empty or out of bounds");
  };
  check(vnf_count_min, vnf_count_max, 0, "vnf_count");
  check(cpu_min, cpu_max, 1, "cpu");
  check(memory_min, memory_max, 1, "memory");
  check(exec_time_min, exec_time_max, 1, "exec_time");
  check(bandwidth_min, bandwidth_max, 1, "bandwidth");
  check(duration_min, duration_max, 1, "duration");
  if (delay_budget_paths < 1) throw ConfigError("delay_budget_paths must be >= 1");
}

double max_acceptable_delay(const UserRequest& request, const NetworkGraph& graph, int d) {
  const PathSet paths = graph.candidate_sd_paths(request.source, request.destination, d);
  double sum = 0.0;
  for (const Path& p : paths) sum += p.total_delay;
  return request.total_exec_time() + sum / static_cast<double>(paths.size());
}

std::vector<UserRequest> generate_requests(int count, const NetworkGraph& graph,
                                           const WorkloadRanges& ranges,
                                           std::uint64_t rng_seed, int slot,
                                           RequestId first_id) {
  ranges.validate();
  std::mt19937_64 rng(derive_seed(rng_seed, seed_stream::kWorkload,
                                  static_cast<std::uint64_t>(slot)));
  auto draw = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::vector<UserRequest> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int m = 0; m < count; ++m) {
    const int k = draw(ranges.vnf_count_min, ranges.vnf_count_max);
    std::vector<VnfSpec> vnfs;
    for (int i = 0; i < k; ++i) {
      VnfSpec v;
      v.cpu = draw(ranges.cpu_min, ranges.cpu_max);
      v.memory = draw(ranges.memory_min, ranges.memory_max);
      v.exec_time = draw(ranges.exec_time_min, ranges.exec_time_max);
      vnfs.push_back(v);
    }
    std::vector<double> bw;
    for (int i = 0; i <= k; ++i) bw.push_back(draw(ranges.bandwidth_min, ranges.bandwidth_max));
    const int duration = draw(ranges.duration_min, ranges.duration_max);
    const NodeId s = draw(0, graph.node_count() - 1);
    const NodeId t = draw(0, graph.node_count() - 1);

    UserRequest r = UserRequest::chain(first_id + m, s, t, vnfs, bw, duration, slot);
    r.max_delay = max_acceptable_delay(r, graph, ranges.delay_budget_paths);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sfcgame
