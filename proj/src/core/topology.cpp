#include "sfcgame/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace sfcgame {

namespace {

constexpr double kLightSpeedKmPerS = 299792.458;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool delay_equal(double x, double y) {
  return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
}

double sum_delay(const NetworkGraph& g, const std::vector<LinkId>& links) {
  double total = 0.0;
  for (LinkId l : links) total += g.link(l).propagation_delay;
  return total;
}

// Best path from `from` to `to` under path_less, avoiding the given nodes
// and links. Labels are full paths; extension preserves their order, so
// plain label-setting is exact.
std::optional<Path> best_path(const NetworkGraph& g, NodeId from, NodeId to,
                              const std::vector<char>& node_banned,
                              const std::vector<char>& link_banned) {
  const int n = g.node_count();
  std::vector<std::optional<Path>> label(n);
  std::vector<char> done(n, 0);
  label[from] = Path{{from}, {}, 0.0};
  for (;;) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || !label[v]) continue;
      if (pick < 0 || path_less(*label[v], *label[pick])) pick = v;
    }
    if (pick < 0) return std::nullopt;
    if (pick == to) return label[pick];
    done[pick] = 1;
    for (auto [w, l] : g.adjacency(pick)) {
      if (done[w] || node_banned[w] || link_banned[l]) continue;
      Path cand = *label[pick];
      cand.nodes.push_back(w);
      cand.links.push_back(l);
      cand.total_delay += g.link(l).propagation_delay;
      if (!label[w] || path_less(cand, *label[w])) label[w] = std::move(cand);
    }
  }
}

}  // namespace

bool path_less(const Path& x, const Path& y) {
  if (!delay_equal(x.total_delay, y.total_delay)) return x.total_delay < y.total_delay;
  if (x.links.size() != y.links.size()) return x.links.size() < y.links.size();
  return x.nodes < y.nodes;
}

double link_delay(double distance_km) { return distance_km / kLightSpeedKmPerS * 1000.0; }

NetworkGraph::NetworkGraph(std::vector<SatelliteNode> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  index();
}

NetworkGraph::NetworkGraph(const NetworkGraph& o) : nodes_(o.nodes_), links_(o.links_) {
  index();
}

NetworkGraph& NetworkGraph::operator=(const NetworkGraph& o) {
  if (this != &o) {
    nodes_ = o.nodes_;
    links_ = o.links_;
    index();
  }
  return *this;
}

void NetworkGraph::index() {
  const int n = node_count();
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i) throw ConfigError("node ids must be 0..N-1 in order");
    if (!(nodes_[i].capacity.cpu > 0 && nodes_[i].capacity.memory > 0))
      throw ConfigError("node " + std::to_string(i) + ": capacities must be > 0");
    nodes_[i].power.validate();
  }
  adjacency_.assign(n, {});
  std::set<std::pair<NodeId, NodeId>> seen;
  total_bandwidth_ = 0.0;
  for (int l = 0; l < link_count(); ++l) {
    Link& lk = links_[l];
    if (lk.a > lk.b) std::swap(lk.a, lk.b);
    if (lk.a < 0 || lk.b >= n || lk.a == lk.b)
      throw ConfigError("link " + std::to_string(l) + ": endpoints must be distinct nodes");
    if (!(lk.bandwidth_capacity > 0 && lk.propagation_delay > 0))
      throw ConfigError("link " + std::to_string(l) + ": bandwidth and delay must be > 0");
    if (!seen.insert({lk.a, lk.b}).second)
      throw ConfigError("duplicate link " + std::to_string(lk.a) + "-" + std::to_string(lk.b));
    adjacency_[lk.a].emplace_back(lk.b, l);
    adjacency_[lk.b].emplace_back(lk.a, l);
    total_bandwidth_ += lk.bandwidth_capacity;
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  total_max_power_ = 0.0;
  for (const auto& node : nodes_) total_max_power_ += node.power.p_max;

  // Floyd-Warshall; graphs here have at most a few dozen nodes.
  shortest_delay_.assign(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) shortest_delay_[i][i] = 0.0;
  for (const auto& lk : links_) {
    shortest_delay_[lk.a][lk.b] = std::min(shortest_delay_[lk.a][lk.b], lk.propagation_delay);
    shortest_delay_[lk.b][lk.a] = shortest_delay_[lk.a][lk.b];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        shortest_delay_[i][j] =
            std::min(shortest_delay_[i][j], shortest_delay_[i][k] + shortest_delay_[k][j]);

  cache_ = std::make_unique<PathCache>(static_cast<std::size_t>(2 * n * n));
}

LinkId NetworkGraph::find_link(NodeId a, NodeId b) const {
  for (auto [w, l] : adjacency_.at(a))
    if (w == b) return l;
  return -1;
}

double NetworkGraph::shortest_delay(NodeId s, NodeId t) const {
  return shortest_delay_.at(s).at(t);
}

bool NetworkGraph::connected() const {
  for (int t = 0; t < node_count(); ++t)
    if (std::isinf(shortest_delay_[0][t])) return false;
  return true;
}

PathSet NetworkGraph::cached(int kind, NodeId s, NodeId t, int d) const {
  const int n = node_count();
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw Error("path query on unknown node");
  if (d < 1) throw Error("path count d must be >= 1");
  auto& slot = cache_->table[static_cast<std::size_t>((kind * n + s) * n + t)];

  auto view = [&](const CacheEntry* e) {
    if (e->paths.empty()) throw NoPathError(s, t);
    const auto count = std::min<std::size_t>(e->paths.size(), static_cast<std::size_t>(d));
    return PathSet{s, t, std::span<const Path>(e->paths.data(), count)};
  };

  if (const CacheEntry* e = slot.load(std::memory_order_acquire);
      e && (e->computed_for >= d || e->exhausted()))
    return view(e);

  std::lock_guard lock(cache_->mutex);
  if (const CacheEntry* e = slot.load(std::memory_order_acquire);
      e && (e->computed_for >= d || e->exhausted()))
    return view(e);
  // Compute a little ahead so the common d values share one entry.
  const int want = std::max(d, 8);
  auto entry = std::make_unique<CacheEntry>();
  entry->paths = kind == 0 ? compute_k_shortest(s, t, want) : compute_candidates(s, t, want);
  entry->computed_for = want;
  const CacheEntry* raw = entry.get();
  cache_->owned.push_back(std::move(entry));
  slot.store(raw, std::memory_order_release);
  return view(raw);
}

PathSet NetworkGraph::k_shortest_paths(NodeId s, NodeId t, int d) const {
  return cached(0, s, t, d);
}

PathSet NetworkGraph::candidate_sd_paths(NodeId s, NodeId dest, int d) const {
  return cached(1, s, dest, d);
}

// Yen's loopless k-shortest paths.
std::vector<Path> NetworkGraph::compute_k_shortest(NodeId s, NodeId t, int d) const {
  if (s == t) return {Path{{s}, {}, 0.0}};
  const int n = node_count();
  std::vector<char> no_nodes(n, 0), no_links(link_count(), 0);
  auto first = best_path(*this, s, t, no_nodes, no_links);
  if (!first) return {};

  std::vector<Path> accepted{*first};
  std::vector<Path> pending;
  while (static_cast<int>(accepted.size()) < d) {
    const Path& prev = accepted.back();
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const NodeId spur = prev.nodes[i];
      std::vector<char> node_banned(n, 0), link_banned(link_count(), 0);
      for (const Path& p : accepted) {
        if (p.nodes.size() > i + 1 &&
            std::equal(p.nodes.begin(), p.nodes.begin() + static_cast<long>(i) + 1,
                       prev.nodes.begin()))
          link_banned[p.links[i]] = 1;
      }
      for (std::size_t j = 0; j < i; ++j) node_banned[prev.nodes[j]] = 1;

      auto tail = best_path(*this, spur, t, node_banned, link_banned);
      if (!tail) continue;
      Path cand;
      cand.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + static_cast<long>(i));
      cand.links.assign(prev.links.begin(), prev.links.begin() + static_cast<long>(i));
      cand.nodes.insert(cand.nodes.end(), tail->nodes.begin(), tail->nodes.end());
      cand.links.insert(cand.links.end(), tail->links.begin(), tail->links.end());
      cand.total_delay = sum_delay(*this, cand.links);
      auto same = [&](const Path& p) { return p.nodes == cand.nodes; };
      if (std::none_of(accepted.begin(), accepted.end(), same) &&
          std::none_of(pending.begin(), pending.end(), same))
        pending.push_back(std::move(cand));
    }
    if (pending.empty()) break;
    auto best = std::min_element(pending.begin(), pending.end(), path_less);
    accepted.push_back(std::move(*best));
    pending.erase(best);
  }
  return accepted;
}

std::vector<Path> NetworkGraph::compute_candidates(NodeId s, NodeId dest, int d) const {
  if (s != dest) return compute_k_shortest(s, dest, d);

  std::vector<Path> nearest;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (v == s || std::isinf(shortest_delay_[s][v])) continue;
    nearest.push_back(compute_k_shortest(s, v, 1).front());
  }
  std::sort(nearest.begin(), nearest.end(), path_less);

  std::vector<Path> out{Path{{s}, {}, 0.0}};
  for (const Path& go : nearest) {
    if (static_cast<int>(out.size()) >= d) break;
    Path walk = go;
    walk.nodes.insert(walk.nodes.end(), go.nodes.rbegin() + 1, go.nodes.rend());
    walk.links.insert(walk.links.end(), go.links.rbegin(), go.links.rend());
    walk.total_delay = sum_delay(*this, walk.links);
    out.push_back(std::move(walk));
  }
  return out;
}

NetworkGraph build_constellation(int planes, int sats_per_plane, double intra_plane_km,
                                 double inter_plane_km, const NodeTemplate& node_template,
                                 double link_bw) {
  if (planes < 1 || sats_per_plane < 1)
    throw ConfigError("constellation needs at least one plane and one satellite per plane");
  std::vector<SatelliteNode> nodes;
  for (int p = 0; p < planes; ++p) {
    for (int k = 0; k < sats_per_plane; ++k) {
      SatelliteNode node;
      node.id = p * sats_per_plane + k;
      node.plane = p;
      node.slot_in_plane = k;
      node.capacity = node_template.capacity;
      node.power = node_template.power;
      nodes.push_back(node);
    }
  }

  std::map<std::pair<NodeId, NodeId>, double> wiring;  // merged, ordered
  auto wire = [&](NodeId a, NodeId b, double km) {
    if (a == b) return;
    wiring.emplace(std::minmax(a, b), km);
  };
  for (int p = 0; p < planes; ++p) {
    for (int k = 0; k < sats_per_plane; ++k) {
      const NodeId self = p * sats_per_plane + k;
      wire(self, p * sats_per_plane + (k + 1) % sats_per_plane, intra_plane_km);
      wire(self, ((p + 1) % planes) * sats_per_plane + k, inter_plane_km);
    }
  }

  std::vector<Link> links;
  for (const auto& [ends, km] : wiring)
    links.push_back(Link{ends.first, ends.second, link_bw, link_delay(km), km});
  return NetworkGraph(std::move(nodes), std::move(links));
}

}  // namespace sfcgame
