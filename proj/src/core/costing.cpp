#include "sfcgame/costing.hpp"

#include <algorithm>
#include <cmath>

namespace sfcgame {

namespace {

constexpr double kCapacityTol = 1e-9;

bool hosts_real_vnf(const UserRequest& r, const Strategy& s, NodeId n) {
  if (!s.allocated) return false;
  for (std::size_t i = 1; i + 1 < s.hosts.size(); ++i)
    if (s.hosts[i] == n && !r.vnfs[i].is_pseudo) return true;
  return false;
}

}  // namespace

void Weights::validate() const {
  if (bw < 0 || power < 0 || delay < 0) throw ConfigError("weights must be non-negative");
  if (std::abs(bw + power + delay - 1.0) > 1e-9) throw ConfigError("weights must sum to 1");
}

int Strategy::total_hops() const {
  int h = 0;
  for (const auto& r : routes) h += r.hop_count();
  return h;
}

bool Strategy::same_placement(const Strategy& o) const {
  if (allocated != o.allocated || hosts != o.hosts || routes.size() != o.routes.size())
    return false;
  for (std::size_t i = 0; i < routes.size(); ++i)
    if (routes[i].nodes != o.routes[i].nodes) return false;
  return true;
}

bool strategy_better(const Strategy& x, const Strategy& y) {
  if (x.payoff() != y.payoff()) return x.payoff() > y.payoff();
  if (x.total_hops() != y.total_hops()) return x.total_hops() < y.total_hops();
  if (x.hosts != y.hosts) return x.hosts < y.hosts;
  for (std::size_t i = 0; i < std::min(x.routes.size(), y.routes.size()); ++i)
    if (x.routes[i].nodes != y.routes[i].nodes) return x.routes[i].nodes < y.routes[i].nodes;
  return false;
}

const Strategy* StrategyProfile::find(RequestId id) const {
  auto it = strategies.find(id);
  return it == strategies.end() ? nullptr : &it->second;
}

int StrategyProfile::allocated_count() const {
  return static_cast<int>(std::count_if(strategies.begin(), strategies.end(),
                                        [](const auto& kv) { return kv.second.allocated; }));
}

std::string to_string(EnergyCoupling c) {
  return c == EnergyCoupling::Separable ? "separable" : "coupled";
}

EnergyCoupling energy_coupling_from_string(const std::string& s) {
  if (s == "separable") return EnergyCoupling::Separable;
  if (s == "coupled") return EnergyCoupling::Coupled;
  throw ConfigError("coupling must be 'separable' or 'coupled', got '" + s + "'");
}

void ResourceUsage::add(const UserRequest& request, const Strategy& strategy, double sign) {
  if (!strategy.allocated) return;
  for (std::size_t i = 0; i < strategy.hosts.size(); ++i) {
    const auto& v = request.vnfs[i];
    if (v.is_pseudo) continue;
    Resources& r = node[static_cast<std::size_t>(strategy.hosts[i])];
    r.cpu += sign * v.cpu;
    r.memory += sign * v.memory;
  }
  for (std::size_t e = 0; e < strategy.routes.size(); ++e)
    for (LinkId l : strategy.routes[e].links)
      link[static_cast<std::size_t>(l)] += sign * request.edges[e].bandwidth;
}

SlotContext SlotContext::make(const NetworkGraph& graph, int slot,
                              std::vector<ServerState> previous_states,
                              std::vector<Commitment> committed, IdleCharge idle_charge,
                              EnergyCoupling coupling) {
  if (static_cast<int>(previous_states.size()) != graph.node_count())
    throw ConfigError("slot context needs one server state per node");
  SlotContext ctx;
  ctx.slot = slot;
  ctx.idle_charge = idle_charge;
  ctx.coupling = coupling;
  std::erase_if(committed, [slot](const Commitment& c) { return c.end_slot <= slot; });
  ctx.committed = std::move(committed);
  ctx.previous_states = std::move(previous_states);

  ctx.base_usage = ResourceUsage(graph);
  for (const auto& c : ctx.committed) ctx.base_usage.add(c.request, c.strategy);

  ctx.servers.resize(static_cast<std::size_t>(graph.node_count()));
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    ServerContext& sc = ctx.servers[static_cast<std::size_t>(n)];
    sc.capacity_cpu = graph.node(n).capacity.cpu;
    bool busy = false;
    for (const auto& c : ctx.committed) {
      if (!hosts_real_vnf(c.request, c.strategy, n)) continue;
      busy = true;
      if (c.end_slot > slot + 1) sc.occupied_next_slot = true;
    }
    sc.mode = busy ? PlacementMode::On
                   : placement_mode_for(ctx.previous_states[static_cast<std::size_t>(n)],
                                        graph.node(n).power, slot);
  }
  return ctx;
}

SlotContext SlotContext::fresh(const NetworkGraph& graph, IdleCharge idle_charge,
                               EnergyCoupling coupling) {
  return make(graph, 0,
              std::vector<ServerState>(static_cast<std::size_t>(graph.node_count()),
                                       ServerState::idle_from(0)),
              {}, idle_charge, coupling);
}

const UserRequest& find_request(std::span<const UserRequest> requests, RequestId id) {
  for (const auto& r : requests)
    if (r.id == id) return r;
  throw Error("unknown request id " + std::to_string(id));
}

ResourceUsage usage_excluding(const NetworkGraph& graph, const SlotContext& ctx,
                              const StrategyProfile& profile,
                              std::span<const UserRequest> requests,
                              std::optional<RequestId> exclude) {
  ResourceUsage u = ctx.base_usage;
  if (u.node.empty()) u = ResourceUsage(graph);
  for (const auto& [id, s] : profile.strategies) {
    if (exclude && id == *exclude) continue;
    if (s.allocated) u.add(find_request(requests, id), s);
  }
  return u;
}

std::vector<ServerContext> energy_view(const SlotContext& ctx, const StrategyProfile& profile,
                                       std::span<const UserRequest> requests,
                                       RequestId self) {
  std::vector<ServerContext> view = ctx.servers;
  if (ctx.coupling == EnergyCoupling::Separable) return view;
  for (const auto& [id, s] : profile.strategies) {
    if (id == self || !s.allocated) continue;
    const UserRequest& r = find_request(requests, id);
    for (std::size_t n = 0; n < view.size(); ++n) {
      if (!hosts_real_vnf(r, s, static_cast<NodeId>(n))) continue;
      if (view[n].mode != PlacementMode::Unavailable) view[n].mode = PlacementMode::On;
      if (r.duration_slots >= 2) view[n].occupied_next_slot = true;
    }
  }
  return view;
}

double bandwidth_cost(const Strategy& strategy, const UserRequest& request,
                      const NetworkGraph& graph) {
  double used = 0.0;
  for (std::size_t e = 0; e < strategy.routes.size(); ++e)
    used += request.edges[e].bandwidth * strategy.routes[e].hop_count();
  return used / graph.total_bandwidth();
}

double energy_cost(const Strategy& strategy, const UserRequest& request,
                   const NetworkGraph& graph, std::span<const ServerContext> servers,
                   IdleCharge idle_charge) {
  double watts = 0.0;
  std::vector<char> charged(servers.size(), 0);
  for (std::size_t i = 0; i < strategy.hosts.size(); ++i) {
    const auto& v = request.vnfs[i];
    if (v.is_pseudo) continue;
    const auto n = static_cast<std::size_t>(strategy.hosts[i]);
    watts += vnf_power_attribution(servers[n], v.cpu, graph.node(strategy.hosts[i]).power,
                                   charged[n] != 0, idle_charge);
    charged[n] = 1;
  }
  return watts / graph.total_max_power();
}

double delay_cost(const Strategy& strategy, const UserRequest& request) {
  double t = request.total_exec_time();
  for (const auto& r : strategy.routes) t += r.total_delay;
  if (t == 0.0) return 0.0;
  return t / request.max_delay;
}

bool within_delay_budget(double used_ms, double budget_ms) {
  return used_ms <= budget_ms + 1e-9 * std::max(1.0, std::abs(budget_ms));
}

double user_payoff(const CostBreakdown& cost, const Weights& weights, bool allocated) {
  if (!allocated) return 0.0;
  return 1.0 - weights.bw * cost.bw - weights.power * cost.power - weights.delay * cost.delay;
}

CostBreakdown evaluate(const Strategy& strategy, const UserRequest& request,
                       const NetworkGraph& graph, std::span<const ServerContext> servers,
                       IdleCharge idle_charge, const Weights& weights) {
  CostBreakdown c;
  if (!strategy.allocated) return c;
  c.bw = bandwidth_cost(strategy, request, graph);
  c.power = energy_cost(strategy, request, graph, servers, idle_charge);
  c.delay = delay_cost(strategy, request);
  c.payoff = user_payoff(c, weights, true);
  return c;
}

double network_payoff(const StrategyProfile& profile) {
  double phi = 0.0;
  for (const auto& [id, s] : profile.strategies) phi += s.payoff();
  return phi;
}

double network_payoff_reevaluated(const StrategyProfile& profile,
                                  std::span<const UserRequest> requests,
                                  const NetworkGraph& graph, const SlotContext& ctx,
                                  const Weights& weights) {
  double phi = 0.0;
  for (const auto& [id, s] : profile.strategies) {
    if (!s.allocated) continue;
    const auto view = energy_view(ctx, profile, requests, id);
    phi += evaluate(s, find_request(requests, id), graph, view, ctx.idle_charge, weights).payoff;
  }
  return phi;
}

std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Placement: return "placement";
    case Violation::Kind::PathSelection: return "path_selection";
    case Violation::Kind::NodeResource: return "node_resource";
    case Violation::Kind::LinkBandwidth: return "link_bandwidth";
    case Violation::Kind::Delay: return "delay";
    case Violation::Kind::IdleTime: return "idle_time";
    case Violation::Kind::OffTime: return "off_time";
  }
  return "?";
}

std::vector<Violation> check_server_states(std::span<const ServerState> states,
                                           const NetworkGraph& graph, int slot) {
  std::vector<Violation> out;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const auto& st = states[n];
    const auto& pp = graph.node(static_cast<NodeId>(n)).power;
    const auto node = static_cast<NodeId>(n);
    if (st.mode == ServerMode::Idle &&
        (!st.idle_since || slot - *st.idle_since > pp.t_idle_max))
      out.push_back({Violation::Kind::IdleTime, std::nullopt, node, std::nullopt,
                     "idle gap exceeds the maximum idle time"});
    if ((st.mode == ServerMode::UnavailableOff || st.mode == ServerMode::AvailableOff) &&
        !st.off_since)
      out.push_back({Violation::Kind::OffTime, std::nullopt, node, std::nullopt,
                     "off server without an off timestamp"});
    if (st.mode == ServerMode::AvailableOff && st.off_since &&
        slot - *st.off_since < pp.t_off_min)
      out.push_back({Violation::Kind::OffTime, std::nullopt, node, std::nullopt,
                     "available before the minimum off time"});
  }
  return out;
}

std::vector<Violation> check_feasibility(const StrategyProfile& profile,
                                         std::span<const UserRequest> requests,
                                         const NetworkGraph& graph, const SlotContext& ctx) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  auto flag = [&out](K k, std::optional<RequestId> r, std::optional<NodeId> n,
                     std::optional<LinkId> l, std::string why) {
    out.push_back(Violation{k, r, n, l, std::move(why)});
  };

  ResourceUsage usage = ctx.base_usage;
  if (usage.node.empty()) usage = ResourceUsage(graph);

  for (const auto& [id, s] : profile.strategies) {
    const UserRequest* req = nullptr;
    for (const auto& r : requests)
      if (r.id == id) req = &r;
    if (!req) {
      flag(K::Placement, id, std::nullopt, std::nullopt, "strategy for unknown request");
      continue;
    }
    if (!s.allocated) {
      if (!s.hosts.empty() || !s.routes.empty())
        flag(K::Placement, id, std::nullopt, std::nullopt, "unallocated strategy holds a placement");
      continue;
    }
    if (s.hosts.size() != req->vnfs.size()) {
      flag(K::Placement, id, std::nullopt, std::nullopt, "need exactly one host per VNF");
      continue;
    }
    bool hosts_ok = true;
    for (NodeId h : s.hosts) {
      if (h < 0 || h >= graph.node_count()) {
        flag(K::Placement, id, h, std::nullopt, "host is not a node");
        hosts_ok = false;
      }
    }
    if (!hosts_ok) continue;
    if (s.hosts.front() != req->source || s.hosts.back() != req->destination)
      flag(K::Placement, id, std::nullopt, std::nullopt, "endpoints not pinned to source/destination");

    if (s.routes.size() != req->edges.size()) {
      flag(K::PathSelection, id, std::nullopt, std::nullopt, "need exactly one route per SFC edge");
      continue;
    }
    bool routes_ok = true;
    for (std::size_t e = 0; e < s.routes.size(); ++e) {
      const Path& p = s.routes[e];
      const NodeId from = s.hosts[static_cast<std::size_t>(req->edges[e].from_index)];
      const NodeId to = s.hosts[static_cast<std::size_t>(req->edges[e].to_index)];
      bool ok = !p.nodes.empty() && p.nodes.size() == p.links.size() + 1 &&
                p.nodes.front() == from && p.nodes.back() == to;
      for (std::size_t k = 0; ok && k < p.links.size(); ++k) {
        const LinkId l = p.links[k];
        ok = l >= 0 && l < graph.link_count() &&
             std::minmax(p.nodes[k], p.nodes[k + 1]) ==
                 std::minmax(graph.link(l).a, graph.link(l).b);
      }
      if (ok && from == to && !p.links.empty()) ok = false;
      if (!ok) {
        flag(K::PathSelection, id, std::nullopt, std::nullopt,
             "route of edge " + std::to_string(e) + " does not connect its hosts");
        routes_ok = false;
      }
    }
    if (!routes_ok) continue;

    for (std::size_t i = 0; i < s.hosts.size(); ++i) {
      if (req->vnfs[i].is_pseudo) continue;
      const auto n = static_cast<std::size_t>(s.hosts[i]);
      if (!ctx.servers.empty() && ctx.servers[n].mode == PlacementMode::Unavailable)
        flag(K::OffTime, id, s.hosts[i], std::nullopt, "host is unavailable-off this slot");
    }

    double used = req->total_exec_time();
    for (const auto& r : s.routes) used += r.total_delay;
    if (!within_delay_budget(used, req->max_delay))
      flag(K::Delay, id, std::nullopt, std::nullopt,
           "service delay " + std::to_string(used) + " ms exceeds " +
               std::to_string(req->max_delay) + " ms");

    usage.add(*req, s);
  }

  for (NodeId n = 0; n < graph.node_count(); ++n) {
    const auto& used = usage.node[static_cast<std::size_t>(n)];
    const auto& cap = graph.node(n).capacity;
    if (used.cpu > cap.cpu + kCapacityTol || used.memory > cap.memory + kCapacityTol)
      flag(K::NodeResource, std::nullopt, n, std::nullopt,
           "cpu " + std::to_string(used.cpu) + "/" + std::to_string(cap.cpu) + ", memory " +
               std::to_string(used.memory) + "/" + std::to_string(cap.memory));
  }
  for (LinkId l = 0; l < graph.link_count(); ++l) {
    const double used = usage.link[static_cast<std::size_t>(l)];
    if (used > graph.link(l).bandwidth_capacity + kCapacityTol)
      flag(K::LinkBandwidth, std::nullopt, std::nullopt, l,
           std::to_string(used) + " Mbps over " + std::to_string(graph.link(l).bandwidth_capacity));
  }

  auto states = check_server_states(ctx.previous_states, graph, ctx.slot - 1);
  out.insert(out.end(), states.begin(), states.end());
  return out;
}

}  // namespace sfcgame
