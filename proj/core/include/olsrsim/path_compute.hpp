#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "olsrsim/messages.hpp"
#include "olsrsim/metrics.hpp"

namespace olsrsim {

/// Directed snapshot of the learned topology for one metric. Edges that the
/// metric cannot use (q == 0, or MD without a delay sample) are dropped on
/// insertion, so searches never see them.
class LinkGraph {
 public:
  struct Edge {
    NodeId to;
    LinkSample link;
  };

  LinkGraph(std::size_t node_count, MetricKind kind);

  /// Returns false when the edge was rejected as inadmissible. A second
  /// insertion of the same (from, to) replaces the first.
  bool add_edge(NodeId from, NodeId to, const LinkSample& link);
  bool has_edge(NodeId from, NodeId to) const;

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const;
  MetricKind kind() const { return kind_; }
  std::span<const Edge> out_edges(NodeId from) const { return adj_[from]; }

 private:
  MetricKind kind_;
  std::vector<std::vector<Edge>> adj_;
};

struct Route {
  NodeId next_hop;
  PathWeight weight;
};

/// Best route from `src` to every reachable destination under `kind`.
/// Additive metrics and ML use a label-setting search ordered by better();
/// INVETX restricts to minimum-hop paths (BFS layers) and maximises the sum
/// of link qualities layer by layer. Every arithmetic step goes through ctr.
std::map<NodeId, Route> compute_paths(MetricKind kind, const LinkGraph& graph, NodeId src,
                                      OpCounter& ctr);

}  // namespace olsrsim
