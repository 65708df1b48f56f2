#pragma once

#include <atomic>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "sfcgame/common.hpp"
#include "sfcgame/energy.hpp"

namespace sfcgame {

/// Per-resource amounts. Only cpu (vCPUs) and memory (GB) are modeled.
struct Resources {
  double cpu = 0.0;
  double memory = 0.0;

  Resources& operator+=(const Resources& o) {
    cpu += o.cpu;
    memory += o.memory;
    return *this;
  }
  Resources& operator-=(const Resources& o) {
    cpu -= o.cpu;
    memory -= o.memory;
    return *this;
  }
  bool fits_within(const Resources& cap) const {
    return cpu <= cap.cpu && memory <= cap.memory;
  }
  bool operator==(const Resources&) const = default;
};

struct SatelliteNode {
  NodeId id = 0;
  int plane = 0;
  int slot_in_plane = 0;
  Resources capacity{112.0, 192.0};
  PowerParams power;
};

struct Link {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  double bandwidth_capacity = 100.0;  // Mbps
  double propagation_delay = 0.0;     // ms
  double distance = 0.0;              // km

  NodeId other(NodeId n) const { return n == a ? b : a; }
};

/// A walk through the graph. Candidate paths are loopless except for the
/// out-and-back walks used when source and destination coincide.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  double total_delay = 0.0;

  int hop_count() const { return static_cast<int>(links.size()); }
  NodeId source() const { return nodes.front(); }
  NodeId destination() const { return nodes.back(); }

  bool operator==(const Path& o) const { return nodes == o.nodes && links == o.links; }
};

/// Total order used for every ranking of paths: delay (with a relative
/// tolerance of 1e-9), then hop count, then lexicographic node sequence.
bool path_less(const Path& x, const Path& y);

/// Ranked paths between two nodes. A view into the graph's path cache; it
/// stays valid for the lifetime of the graph.
struct PathSet {
  NodeId source = 0;
  NodeId destination = 0;
  std::span<const Path> paths;

  std::size_t size() const { return paths.size(); }
  const Path& operator[](std::size_t i) const { return paths[i]; }
  auto begin() const { return paths.begin(); }
  auto end() const { return paths.end(); }
};

/// Light-speed propagation delay in ms for an ISL of the given length.
double link_delay(double distance_km);

struct NodeTemplate {
  Resources capacity{112.0, 192.0};
  PowerParams power;
};

class NetworkGraph {
 public:
  NetworkGraph() = default;
  NetworkGraph(std::vector<SatelliteNode> nodes, std::vector<Link> links);

  NetworkGraph(const NetworkGraph& o);
  NetworkGraph& operator=(const NetworkGraph& o);
  NetworkGraph(NetworkGraph&&) noexcept = default;
  NetworkGraph& operator=(NetworkGraph&&) noexcept = default;

  const std::vector<SatelliteNode>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const SatelliteNode& node(NodeId id) const { return nodes_.at(id); }
  const Link& link(LinkId id) const { return links_.at(id); }

  /// (neighbor, link) pairs sorted by neighbor id.
  const std::vector<std::pair<NodeId, LinkId>>& adjacency(NodeId n) const {
    return adjacency_.at(n);
  }
  int degree(NodeId n) const { return static_cast<int>(adjacency_.at(n).size()); }

  /// Link joining a and b, or -1.
  LinkId find_link(NodeId a, NodeId b) const;

  double total_bandwidth() const { return total_bandwidth_; }
  double total_max_power() const { return total_max_power_; }

  /// Up to d loopless paths from s to t ranked by path_less (Yen's
  /// algorithm). s == t yields the single zero-hop path. Cached; safe to
  /// call concurrently. Throws NoPathError when t is unreachable.
  PathSet k_shortest_paths(NodeId s, NodeId t, int d) const;

  /// Candidate source-to-destination paths of a request. Same as
  /// k_shortest_paths when s != dest; for s == dest returns the zero-hop
  /// path plus out-and-back walks to the d-1 nearest other nodes.
  PathSet candidate_sd_paths(NodeId s, NodeId dest, int d) const;

  /// Delay of the fastest path, 0 for s == t, +inf when unreachable.
  double shortest_delay(NodeId s, NodeId t) const;

  bool connected() const;

  std::string name(NodeId n) const { return "Sat" + std::to_string(n + 1); }

 private:
  void index();

  std::vector<SatelliteNode> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<std::pair<NodeId, LinkId>>> adjacency_;
  std::vector<std::vector<double>> shortest_delay_;
  double total_bandwidth_ = 0.0;
  double total_max_power_ = 0.0;

  // Ranked lists are prefix-stable in d, so each (kind, s, t) keeps the
  // longest list computed so far. Superseded lists stay alive so views
  // handed out earlier remain valid.
  struct CacheEntry {
    std::vector<Path> paths;
    int computed_for = 0;
    bool exhausted() const { return static_cast<int>(paths.size()) < computed_for; }
  };
  struct PathCache {
    explicit PathCache(std::size_t slots) : table(slots) {}
    std::mutex mutex;
    std::vector<std::atomic<const CacheEntry*>> table;
    std::deque<std::unique_ptr<CacheEntry>> owned;
  };
  mutable std::unique_ptr<PathCache> cache_;

  PathSet cached(int kind, NodeId s, NodeId t, int d) const;
  std::vector<Path> compute_k_shortest(NodeId s, NodeId t, int d) const;
  std::vector<Path> compute_candidates(NodeId s, NodeId dest, int d) const;
};

/// Torus-wired constellation: each satellite links to its in-plane
/// neighbors (intra_plane_km) and to the same slot in adjacent planes
/// (inter_plane_km). Parallel duplicates are merged.
NetworkGraph build_constellation(int planes, int sats_per_plane, double intra_plane_km,
                                 double inter_plane_km, const NodeTemplate& node_template,
                                 double link_bw);

}  // namespace sfcgame
