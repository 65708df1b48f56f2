#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "sfcgame/costing.hpp"

namespace sfcgame {

struct PlacementConfig {
  int d = 8;                 // candidate paths per request and routes per hop
  std::size_t beam = 4;      // kUnbounded keeps every state
  Weights weights;

  void validate() const;
};

/// What one request's placement may read: the resources already held by
/// everyone else and the server contexts its energy attribution uses.
struct PlacementInput {
  const UserRequest& request;
  const NetworkGraph& graph;
  const ResourceUsage& usage;
  std::span<const ServerContext> servers;
  IdleCharge idle_charge = IdleCharge::Once;
};

/// Beam search over the nodes of one candidate path. Stages follow the
/// chain; every route in k_shortest_paths(prev, host, d) that keeps the
/// partial strategy feasible is a separate branch. States are ranked by
/// partial payoff (then hops, hosts, routes) and cut to the beam width.
std::optional<Strategy> viterbi_place(const PlacementInput& in, const Path& path,
                                      const PlacementConfig& config);

/// Best viterbi_place result over all candidate source-destination paths.
std::optional<Strategy> best_response(const PlacementInput& in, const PlacementConfig& config);

/// best_response of `request` with every other strategy of the profile fixed.
std::optional<Strategy> best_response(const UserRequest& request, const StrategyProfile& profile,
                                      std::span<const UserRequest> requests,
                                      const NetworkGraph& graph, const SlotContext& ctx,
                                      const PlacementConfig& config);

/// Myopic baseline: each VNF goes to the feasible corridor node with the
/// smallest weighted cost increment over the single shortest route from the
/// previous host. Ties go to the smallest node id. No backtracking.
std::optional<Strategy> greedy_place(const PlacementInput& in, const PlacementConfig& config);

std::optional<Strategy> greedy_place(const UserRequest& request, const StrategyProfile& profile,
                                     std::span<const UserRequest> requests,
                                     const NetworkGraph& graph, const SlotContext& ctx,
                                     const PlacementConfig& config);

}  // namespace sfcgame
