#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sfcgame/costing.hpp"
#include "sfcgame/placement.hpp"

namespace sfcgame {

struct GameConfig {
  int k_max = 100;
  double epsilon = 1e-9;
  PlacementConfig placement;
  // Worker threads for the proposal phase; results do not depend on it.
  int threads = 1;
  // Called after every committed iteration with the new profile.
  std::function<void(int iteration, const StrategyProfile&)> on_commit;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  std::optional<RequestId> winner;
  double phi_before = 0.0;
  double phi_after = 0.0;
  int improving = 0;  // proposals that beat their current payoff by > epsilon
};

struct GameTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
};

struct GameResult {
  StrategyProfile profile;
  GameTrace trace;
};

/// Best-response dynamics: all requests start unallocated; each iteration
/// every request proposes a best response against the same snapshot and
/// the single largest improvement (ties to the smallest id) is committed.
/// Stops when no proposal improves by more than epsilon or after k_max
/// iterations.
GameResult pgra_run(std::span<const UserRequest> requests, const NetworkGraph& graph,
                    const SlotContext& ctx, const GameConfig& config);

/// True when no request can raise its payoff by more than epsilon through
/// its own best response.
bool is_nash(const StrategyProfile& profile, std::span<const UserRequest> requests,
             const NetworkGraph& graph, const SlotContext& ctx, const GameConfig& config);

/// |dPhi - dphi_m| when request `id` switches to `alt` and every other
/// strategy stays put. Payoffs are re-evaluated under ctx.coupling.
double potential_identity_check(const StrategyProfile& profile,
                                std::span<const UserRequest> requests,
                                const NetworkGraph& graph, const SlotContext& ctx,
                                RequestId id, const Strategy& alt, const Weights& weights);

}  // namespace sfcgame
