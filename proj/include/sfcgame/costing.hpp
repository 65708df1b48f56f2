#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfcgame/common.hpp"
#include "sfcgame/energy.hpp"
#include "sfcgame/topology.hpp"
#include "sfcgame/workload.hpp"

namespace sfcgame {

/// Preference weights of the three cost components. Must sum to 1.
struct Weights {
  double bw = 1.0 / 3.0;
  double power = 1.0 / 3.0;
  double delay = 1.0 / 3.0;

  void validate() const;
};

struct CostBreakdown {
  double bw = 0.0;
  double power = 0.0;
  double delay = 0.0;
  double payoff = 0.0;
};

/// One request's placement decision: a host per VNF (pseudo endpoints
/// included) and a route per SFC edge. Unallocated strategies are empty.
struct Strategy {
  RequestId request_id = 0;
  std::vector<NodeId> hosts;
  std::vector<Path> routes;
  bool allocated = false;
  std::optional<CostBreakdown> cost;

  static Strategy unallocated(RequestId id) { return Strategy{id, {}, {}, false, std::nullopt}; }

  double payoff() const { return allocated && cost ? cost->payoff : 0.0; }
  int total_hops() const;
  /// Same hosts and route node sequences.
  bool same_placement(const Strategy& o) const;
};

/// Strict preference between two feasible strategies of one request:
/// higher payoff, then fewer total hops, then lexicographic hosts, then
/// lexicographic route node sequences.
bool strategy_better(const Strategy& x, const Strategy& y);

/// Strategies of all requests of one slot, keyed by request id.
struct StrategyProfile {
  std::map<RequestId, Strategy> strategies;

  const Strategy* find(RequestId id) const;
  void set(Strategy s) { strategies[s.request_id] = std::move(s); }
  int allocated_count() const;
};

/// How a request's energy attribution sees other same-slot requests.
enum class EnergyCoupling {
  // Only the slot-start context (committed earlier requests, server states).
  // Each payoff depends on its own strategy alone; the potential identity
  // then holds exactly.
  Separable,
  // Same-slot strategies of other requests also count as occupying servers.
  Coupled,
};

std::string to_string(EnergyCoupling c);
EnergyCoupling energy_coupling_from_string(const std::string& s);

/// Node and link consumption.
struct ResourceUsage {
  std::vector<Resources> node;
  std::vector<double> link;

  ResourceUsage() = default;
  explicit ResourceUsage(const NetworkGraph& g)
      : node(static_cast<std::size_t>(g.node_count())),
        link(static_cast<std::size_t>(g.link_count()), 0.0) {}

  void add(const UserRequest& request, const Strategy& strategy, double sign = 1.0);
};

/// A request placed in an earlier slot that is still holding resources.
struct Commitment {
  UserRequest request;
  Strategy strategy;
  int end_slot = 0;  // first slot in which the resources are free again
};

/// Everything a placement in one slot may read: server power states at the
/// end of the previous slot and the committed requests still running.
struct SlotContext {
  int slot = 0;
  std::vector<ServerState> previous_states;
  std::vector<Commitment> committed;
  IdleCharge idle_charge = IdleCharge::Once;
  EnergyCoupling coupling = EnergyCoupling::Separable;

  // Derived by make().
  std::vector<ServerContext> servers;
  ResourceUsage base_usage;

  static SlotContext make(const NetworkGraph& graph, int slot,
                          std::vector<ServerState> previous_states,
                          std::vector<Commitment> committed,
                          IdleCharge idle_charge = IdleCharge::Once,
                          EnergyCoupling coupling = EnergyCoupling::Separable);

  /// Fresh network at slot 0: every server idle, nothing committed.
  static SlotContext fresh(const NetworkGraph& graph,
                           IdleCharge idle_charge = IdleCharge::Once,
                           EnergyCoupling coupling = EnergyCoupling::Separable);
};

const UserRequest& find_request(std::span<const UserRequest> requests, RequestId id);

/// Resources held by committed work plus every allocated strategy of the
/// profile except `exclude`.
ResourceUsage usage_excluding(const NetworkGraph& graph, const SlotContext& ctx,
                              const StrategyProfile& profile,
                              std::span<const UserRequest> requests,
                              std::optional<RequestId> exclude);

/// Server contexts seen by request `self`'s energy attribution.
std::vector<ServerContext> energy_view(const SlotContext& ctx, const StrategyProfile& profile,
                                       std::span<const UserRequest> requests,
                                       RequestId self);

double bandwidth_cost(const Strategy& strategy, const UserRequest& request,
                      const NetworkGraph& graph);

double energy_cost(const Strategy& strategy, const UserRequest& request,
                   const NetworkGraph& graph, std::span<const ServerContext> servers,
                   IdleCharge idle_charge = IdleCharge::Once);

double delay_cost(const Strategy& strategy, const UserRequest& request);

/// Delay budget test shared by the feasibility check and the optimizers.
bool within_delay_budget(double used_ms, double budget_ms);

double user_payoff(const CostBreakdown& cost, const Weights& weights, bool allocated);

/// All three components and the payoff of an allocated strategy.
CostBreakdown evaluate(const Strategy& strategy, const UserRequest& request,
                       const NetworkGraph& graph, std::span<const ServerContext> servers,
                       IdleCharge idle_charge, const Weights& weights);

/// Sum of the stored user payoffs.
double network_payoff(const StrategyProfile& profile);

/// Sum of user payoffs with every strategy re-evaluated against the
/// profile it sits in (its energy view under ctx.coupling).
double network_payoff_reevaluated(const StrategyProfile& profile,
                                  std::span<const UserRequest> requests,
                                  const NetworkGraph& graph, const SlotContext& ctx,
                                  const Weights& weights);

struct Violation {
  enum class Kind {
    Placement,      // one host per VNF, pinned endpoints
    PathSelection,  // one connecting route per SFC edge
    NodeResource,
    LinkBandwidth,
    Delay,
    IdleTime,
    OffTime,
  };
  Kind kind;
  std::optional<RequestId> request;
  std::optional<NodeId> node;
  std::optional<LinkId> link;
  std::string detail;
};

std::string to_string(Violation::Kind k);

/// Every violated constraint of the profile combined with the committed
/// work of the slot; empty means feasible.
std::vector<Violation> check_feasibility(const StrategyProfile& profile,
                                         std::span<const UserRequest> requests,
                                         const NetworkGraph& graph, const SlotContext& ctx);

/// Idle/off gap constraints of a set of server states during `slot`.
std::vector<Violation> check_server_states(std::span<const ServerState> states,
                                           const NetworkGraph& graph, int slot);

}  // namespace sfcgame
