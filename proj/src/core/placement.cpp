#include "sfcgame/placement.hpp"

#include <algorithm>
#include <cmath>

namespace sfcgame {

namespace {

constexpr double kCapacityTol = 1e-9;

struct Partial {
  std::vector<NodeId> hosts;
  std::vector<const Path*> routes;
  double bw = 0.0;     // Mbps x hops
  double watts = 0.0;
  double delay = 0.0;  // ms, execution plus transmission
  int hops = 0;
  double score = 0.0;
};

bool ranks_before(const Partial& x, const Partial& y) {
  if (x.score != y.score) return x.score > y.score;
  if (x.hops != y.hops) return x.hops < y.hops;
  if (x.hosts != y.hosts) return x.hosts < y.hosts;
  for (std::size_t i = 0; i < x.routes.size(); ++i)
    if (x.routes[i]->nodes != y.routes[i]->nodes) return x.routes[i]->nodes < y.routes[i]->nodes;
  return false;
}

class Search {
 public:
  Search(const PlacementInput& in, const PlacementConfig& config)
      : in_(in), cfg_(config), req_(in.request), g_(in.graph) {
    const std::size_t k = req_.vnfs.size();
    exec_after_.assign(k, 0.0);
    for (std::size_t i = k; i-- > 1;)
      exec_after_[i - 1] = exec_after_[i] + (req_.vnfs[i].is_pseudo ? 0.0 : req_.vnfs[i].exec_time);
  }

  std::size_t stages() const { return req_.vnfs.size() - 1; }
  bool last_stage(std::size_t i) const { return i + 1 == req_.vnfs.size(); }

  Partial start() const {
    Partial p;
    p.hosts.push_back(req_.source);
    p.score = 1.0;
    return p;
  }

  bool host_allowed(NodeId u) const {
    return in_.servers[static_cast<std::size_t>(u)].mode != PlacementMode::Unavailable;
  }

  bool node_fits(const Partial& p, std::size_t i, NodeId u) const {
    const VnfSpec& v = req_.vnfs[i];
    if (v.is_pseudo) return true;
    Resources own = v.demand();
    for (std::size_t j = 1; j < p.hosts.size(); ++j)
      if (p.hosts[j] == u) own += req_.vnfs[j].demand();
    const Resources& held = in_.usage.node[static_cast<std::size_t>(u)];
    const Resources& cap = g_.node(u).capacity;
    return held.cpu + own.cpu <= cap.cpu + kCapacityTol &&
           held.memory + own.memory <= cap.memory + kCapacityTol;
  }

  bool route_fits(const Partial& p, const Path& route, double bandwidth) const {
    for (LinkId l : route.links) {
      double own = 0.0;
      for (LinkId m : route.links)
        if (m == l) own += bandwidth;
      for (std::size_t e = 0; e < p.routes.size(); ++e)
        for (LinkId m : p.routes[e]->links)
          if (m == l) own += req_.edges[e].bandwidth;
      if (in_.usage.link[static_cast<std::size_t>(l)] + own >
          g_.link(l).bandwidth_capacity + kCapacityTol)
        return false;
    }
    return true;
  }

  // Extends p by hosting VNF i on u and routing edge i-1 over `route`.
  // Returns false when the delay budget can no longer be met.
  bool extend(const Partial& p, std::size_t i, NodeId u, const Path& route, Partial& out) const {
    const VnfSpec& v = req_.vnfs[i];
    const double delay = p.delay + (v.is_pseudo ? 0.0 : v.exec_time) + route.total_delay;
    if (!within_delay_budget(delay + exec_after_[i] + g_.shortest_delay(u, req_.destination),
                             req_.max_delay))
      return false;
    out = p;
    out.hosts.push_back(u);
    out.routes.push_back(&route);
    out.delay = delay;
    out.hops += route.hop_count();
    out.bw += req_.edges[i - 1].bandwidth * route.hop_count();
    if (!v.is_pseudo) {
      bool paid = false;
      for (std::size_t j = 1; j < p.hosts.size(); ++j)
        if (p.hosts[j] == u && !req_.vnfs[j].is_pseudo) paid = true;
      out.watts += vnf_power_attribution(in_.servers[static_cast<std::size_t>(u)], v.cpu,
                                         g_.node(u).power, paid, in_.idle_charge);
    }
    out.score = score(out);
    return true;
  }

  double score(const Partial& p) const {
    const Weights& w = cfg_.weights;
    const double delay_term = req_.max_delay > 0.0 ? p.delay / req_.max_delay : 0.0;
    return 1.0 - w.bw * p.bw / g_.total_bandwidth() - w.power * p.watts / g_.total_max_power() -
           w.delay * delay_term;
  }

  // Incremental weighted cost of the last extension, used by greedy.
  double increment(const Partial& before, const Partial& after) const {
    return before.score - after.score;
  }

  Strategy finish(const Partial& p) const {
    Strategy s;
    s.request_id = req_.id;
    s.hosts = p.hosts;
    for (const Path* r : p.routes) s.routes.push_back(*r);
    s.allocated = true;
    s.cost = evaluate(s, req_, g_, in_.servers, in_.idle_charge, cfg_.weights);
    return s;
  }

  bool reachable(NodeId a, NodeId b) const { return std::isfinite(g_.shortest_delay(a, b)); }

 private:
  const PlacementInput& in_;
  const PlacementConfig& cfg_;
  const UserRequest& req_;
  const NetworkGraph& g_;
  std::vector<double> exec_after_;  // real execution time after stage i
};

std::vector<NodeId> corridor_of(const Path& path) {
  std::vector<NodeId> nodes = path.nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

void keep_better(std::optional<Strategy>& best, Strategy cand) {
  if (!best || strategy_better(cand, *best)) best = std::move(cand);
}

}  // namespace

void PlacementConfig::validate() const {
  if (d < 1) throw ConfigError("d must be >= 1");
  if (beam < 1) throw ConfigError("beam width must be >= 1");
  weights.validate();
}

std::optional<Strategy> viterbi_place(const PlacementInput& in, const Path& path,
                                      const PlacementConfig& config) {
  const UserRequest& req = in.request;
  if (path.nodes.empty() || path.source() != req.source || path.destination() != req.destination)
    return std::nullopt;
  const Search search(in, config);
  const std::vector<NodeId> corridor = corridor_of(path);

  std::vector<Partial> layer{search.start()};
  std::vector<Partial> next;
  for (std::size_t i = 1; i <= search.stages(); ++i) {
    const bool last = search.last_stage(i);
    next.clear();
    for (const Partial& p : layer) {
      const NodeId prev = p.hosts.back();
      auto try_host = [&](NodeId u) {
        if (!search.reachable(prev, u) || !search.node_fits(p, i, u)) return;
        for (const Path& route : in.graph.k_shortest_paths(prev, u, config.d)) {
          if (!search.route_fits(p, route, req.edges[i - 1].bandwidth)) continue;
          Partial q;
          if (search.extend(p, i, u, route, q)) next.push_back(std::move(q));
        }
      };
      if (last) {
        try_host(req.destination);
      } else {
        for (NodeId u : corridor)
          if (search.host_allowed(u)) try_host(u);
      }
    }
    if (next.empty()) return std::nullopt;
    if (!last && next.size() > config.beam) {
      std::partial_sort(next.begin(), next.begin() + static_cast<long>(config.beam), next.end(),
                        ranks_before);
      next.resize(config.beam);
    }
    std::swap(layer, next);
  }

  std::optional<Strategy> best;
  for (const Partial& p : layer) keep_better(best, search.finish(p));
  return best;
}

std::optional<Strategy> best_response(const PlacementInput& in, const PlacementConfig& config) {
  std::optional<Strategy> best;
  try {
    for (const Path& path :
         in.graph.candidate_sd_paths(in.request.source, in.request.destination, config.d))
      if (auto s = viterbi_place(in, path, config)) keep_better(best, std::move(*s));
  } catch (const NoPathError&) {
    return std::nullopt;
  }
  return best;
}

std::optional<Strategy> best_response(const UserRequest& request, const StrategyProfile& profile,
                                      std::span<const UserRequest> requests,
                                      const NetworkGraph& graph, const SlotContext& ctx,
                                      const PlacementConfig& config) {
  const ResourceUsage usage = usage_excluding(graph, ctx, profile, requests, request.id);
  const auto servers = energy_view(ctx, profile, requests, request.id);
  return best_response(PlacementInput{request, graph, usage, servers, ctx.idle_charge}, config);
}

std::optional<Strategy> greedy_place(const PlacementInput& in, const PlacementConfig& config) {
  const UserRequest& req = in.request;
  const Search search(in, config);
  std::vector<NodeId> nodes;
  try {
    for (const Path& path : in.graph.candidate_sd_paths(req.source, req.destination, config.d))
      nodes.insert(nodes.end(), path.nodes.begin(), path.nodes.end());
  } catch (const NoPathError&) {
    return std::nullopt;
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  Partial p = search.start();
  for (std::size_t i = 1; i <= search.stages(); ++i) {
    const NodeId prev = p.hosts.back();
    std::optional<Partial> pick;
    double pick_cost = 0.0;
    auto try_host = [&](NodeId u) {
      if (!search.reachable(prev, u) || !search.node_fits(p, i, u)) return;
      const Path& route = in.graph.k_shortest_paths(prev, u, 1)[0];
      if (!search.route_fits(p, route, req.edges[i - 1].bandwidth)) return;
      Partial q;
      if (!search.extend(p, i, u, route, q)) return;
      const double cost = search.increment(p, q);
      if (!pick || cost < pick_cost) {
        pick = std::move(q);
        pick_cost = cost;
      }
    };
    if (search.last_stage(i)) {
      try_host(req.destination);
    } else {
      for (NodeId u : nodes)
        if (search.host_allowed(u)) try_host(u);
    }
    if (!pick) return std::nullopt;
    p = std::move(*pick);
  }
  return search.finish(p);
}

std::optional<Strategy> greedy_place(const UserRequest& request, const StrategyProfile& profile,
                                     std::span<const UserRequest> requests,
                                     const NetworkGraph& graph, const SlotContext& ctx,
                                     const PlacementConfig& config) {
  const ResourceUsage usage = usage_excluding(graph, ctx, profile, requests, request.id);
  const auto servers = energy_view(ctx, profile, requests, request.id);
  return greedy_place(PlacementInput{request, graph, usage, servers, ctx.idle_charge}, config);
}

}  // namespace sfcgame
