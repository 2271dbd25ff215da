#pragma once

#include <algorithm>
#include <vector>

#include "streamsim/units.hpp"

namespace streamsim {

struct ServerNode {
  NodeId id = kNoNode;
  double cpu_capacity = 0.0;            // CPU units
  std::vector<ServiceId> hosted;        // sorted service ids
  double uplink_bw = 0.0;               // bits/s, public last mile
  double downlink_bw = 0.0;             // bits/s
  double public_delay_half = 0.0;       // seconds; pairwise delay = sum of halves

  bool hosts(ServiceId s) const {
    return std::binary_search(hosted.begin(), hosted.end(), s);
  }
};

struct DedicatedLink {
  EdgeId id = kNoEdge;
  NodeId a = kNoNode, b = kNoNode;  // a < b; bidirectional, one shared capacity pool
  double bandwidth = 0.0;           // bits/s
  double cost = 0.0;                // additive usage cost
  double delay = 0.0;               // seconds

  NodeId other(NodeId n) const { return n == a ? b : a; }
};

// The server network: dedicated point-to-point links plus per-node public
// last-mile capacity, and the service directory.
class ResourceGraph {
 public:
  ResourceGraph() = default;

  NodeId add_node(ServerNode node) {
    node.id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    adjacency_.emplace_back();
    return nodes_.back().id;
  }

  EdgeId add_edge(NodeId a, NodeId b, double bandwidth, double cost, double delay) {
    sim_check(a != b, "self loops are not allowed");
    sim_check(edge_between(a, b) == kNoEdge, "duplicate dedicated link");
    DedicatedLink link;
    link.id = static_cast<EdgeId>(edges_.size());
    link.a = std::min(a, b);
    link.b = std::max(a, b);
    link.bandwidth = bandwidth;
    link.cost = cost;
    link.delay = delay;
    edges_.push_back(link);
    adjacency_[static_cast<std::size_t>(a)].push_back(link.id);
    adjacency_[static_cast<std::size_t>(b)].push_back(link.id);
    return link.id;
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const ServerNode& node(NodeId n) const { return nodes_[static_cast<std::size_t>(n)]; }
  ServerNode& node(NodeId n) { return nodes_[static_cast<std::size_t>(n)]; }
  const DedicatedLink& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  DedicatedLink& edge(EdgeId e) { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<ServerNode>& nodes() const { return nodes_; }
  const std::vector<DedicatedLink>& edges() const { return edges_; }

  // Incident edge ids, in insertion order (deterministic).
  const std::vector<EdgeId>& incident(NodeId n) const {
    return adjacency_[static_cast<std::size_t>(n)];
  }
  int degree(NodeId n) const { return static_cast<int>(incident(n).size()); }

  EdgeId edge_between(NodeId a, NodeId b) const {
    const auto& adj = adjacency_[static_cast<std::size_t>(a)];
    for (EdgeId e : adj)
      if (edges_[static_cast<std::size_t>(e)].other(a) == b) return e;
    return kNoEdge;
  }

  double public_delay(NodeId a, NodeId b) const {
    if (a == b) return 0.0;
    return node(a).public_delay_half + node(b).public_delay_half;
  }

  // service id -> sorted hosting nodes; rebuilt from the hosted sets.
  void rebuild_directory(int service_count) {
    directory_.assign(static_cast<std::size_t>(service_count), {});
    for (const ServerNode& n : nodes_)
      for (ServiceId s : n.hosted) directory_[static_cast<std::size_t>(s)].push_back(n.id);
  }
  const std::vector<NodeId>& hosts_of(ServiceId s) const {
    static const std::vector<NodeId> empty;
    if (s < 0 || static_cast<std::size_t>(s) >= directory_.size()) return empty;
    return directory_[static_cast<std::size_t>(s)];
  }
  const std::vector<std::vector<NodeId>>& directory() const { return directory_; }
  std::vector<std::vector<NodeId>>& directory() { return directory_; }

 private:
  std::vector<ServerNode> nodes_;
  std::vector<DedicatedLink> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::vector<std::vector<NodeId>> directory_;
};

}  // namespace streamsim
