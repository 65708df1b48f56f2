#include "sfcgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace sfcgame {

namespace {

std::vector<std::optional<Strategy>> propose_all(std::span<const UserRequest> requests,
                                                 const StrategyProfile& snapshot,
                                                 const NetworkGraph& graph,
                                                 const SlotContext& ctx,
                                                 const GameConfig& config) {
  std::vector<std::optional<Strategy>> out(requests.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < requests.size(); i += step)
      out[i] = best_response(requests[i], snapshot, requests, graph, ctx, config.placement);
  };
  const auto workers = static_cast<std::size_t>(
      std::clamp<int>(config.threads, 1, static_cast<int>(std::max<std::size_t>(requests.size(), 1))));
  if (workers <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w, workers);
  work(0, workers);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

void GameConfig::validate() const {
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  if (!(epsilon > 0)) throw ConfigError("epsilon must be > 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  placement.validate();
}

GameResult pgra_run(std::span<const UserRequest> requests, const NetworkGraph& graph,
                    const SlotContext& ctx, const GameConfig& config) {
  config.validate();
  GameResult result;
  for (const auto& r : requests) result.profile.set(Strategy::unallocated(r.id));

  for (int k = 1; k <= config.k_max; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    rec.phi_before = network_payoff(result.profile);

    const auto proposals = propose_all(requests, result.profile, graph, ctx, config);
    std::optional<std::size_t> winner;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      if (!proposals[i]) continue;
      const double gain =
          proposals[i]->payoff() - result.profile.find(requests[i].id)->payoff();
      if (!(gain > config.epsilon)) continue;
      ++rec.improving;
      if (!winner || gain > best_gain ||
          (gain == best_gain && requests[i].id < requests[*winner].id)) {
        winner = i;
        best_gain = gain;
      }
    }

    if (!winner) {
      rec.phi_after = rec.phi_before;
      result.trace.iterations.push_back(rec);
      result.trace.converged = true;
      break;
    }
    rec.winner = requests[*winner].id;
    result.profile.set(*proposals[*winner]);
    rec.phi_after = network_payoff(result.profile);
    result.trace.iterations.push_back(rec);
    if (config.on_commit) config.on_commit(k, result.profile);
  }
  return result;
}

bool is_nash(const StrategyProfile& profile, std::span<const UserRequest> requests,
             const NetworkGraph& graph, const SlotContext& ctx, const GameConfig& config) {
  for (const auto& r : requests) {
    const auto br = best_response(r, profile, requests, graph, ctx, config.placement);
    if (!br) continue;
    const Strategy* cur = profile.find(r.id);
    const double current = cur ? cur->payoff() : 0.0;
    if (br->payoff() > current + config.epsilon) return false;
  }
  return true;
}

double potential_identity_check(const StrategyProfile& profile,
                                std::span<const UserRequest> requests,
                                const NetworkGraph& graph, const SlotContext& ctx,
                                RequestId id, const Strategy& alt, const Weights& weights) {
  StrategyProfile moved = profile;
  Strategy deviation = alt;
  deviation.request_id = id;
  moved.set(deviation);

  const double phi_before = network_payoff_reevaluated(profile, requests, graph, ctx, weights);
  const double phi_after = network_payoff_reevaluated(moved, requests, graph, ctx, weights);

  auto own = [&](const StrategyProfile& p) {
    const Strategy* s = p.find(id);
    if (!s || !s->allocated) return 0.0;
    const auto view = energy_view(ctx, p, requests, id);
    return evaluate(*s, find_request(requests, id), graph, view, ctx.idle_charge, weights).payoff;
  };
  return std::abs((phi_after - phi_before) - (own(moved) - own(profile)));
}

}  // namespace sfcgame
