#include "olsrsim/path_compute.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace olsrsim {

LinkGraph::LinkGraph(std::size_t node_count, MetricKind kind) : kind_(kind), adj_(node_count) {}

bool LinkGraph::add_edge(NodeId from, NodeId to, const LinkSample& link) {
  if (from >= adj_.size() || to >= adj_.size()) throw std::out_of_range("edge endpoint");
  if (from == to || !admissible(kind_, link)) return false;
  auto& edges = adj_[from];
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge& e, NodeId id) { return e.to < id; });
  if (it != edges.end() && it->to == to) {
    it->link = link;
  } else {
    edges.insert(it, Edge{to, link});
  }
  return true;
}

bool LinkGraph::has_edge(NodeId from, NodeId to) const {
  const auto& edges = adj_[from];
  return std::binary_search(edges.begin(), edges.end(), Edge{to, {}},
                            [](const Edge& a, const Edge& b) { return a.to < b.to; });
}

std::size_t LinkGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : adj_) n += e.size();
  return n;
}

namespace {

struct Label {
  std::optional<PathWeight> weight;
  NodeId next_hop = 0;
};

std::map<NodeId, Route> collect(const std::vector<Label>& labels, NodeId src) {
  std::map<NodeId, Route> out;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (v == src || !labels[v].weight) continue;
    out.emplace(static_cast<NodeId>(v), Route{labels[v].next_hop, *labels[v].weight});
  }
  return out;
}

// Label-setting search. Valid because every metric here is monotone (an
// extension is never preferred to its prefix) and isotone under better().
std::map<NodeId, Route> best_first(MetricKind kind, const LinkGraph& g, NodeId src,
                                   OpCounter& ctr) {
  const std::size_t n = g.node_count();
  std::vector<Label> labels(n);
  std::vector<bool> settled(n, false);
  labels[src].weight = identity(kind);

  for (;;) {
    std::optional<NodeId> u;
    for (std::size_t v = 0; v < n; ++v) {
      if (settled[v] || !labels[v].weight) continue;
      if (!u || better(kind, *labels[v].weight, *labels[*u].weight, ctr)) {
        u = static_cast<NodeId>(v);
      }
    }
    if (!u) break;
    settled[*u] = true;
    const PathWeight base = *labels[*u].weight;
    for (const auto& e : g.out_edges(*u)) {
      if (settled[e.to]) continue;
      const PathWeight cand = combine(kind, base, link_weight(kind, e.link, ctr), ctr);
      Label& dst = labels[e.to];
      if (!dst.weight || better(kind, cand, *dst.weight, ctr)) {
        dst.weight = cand;
        dst.next_hop = (*u == src) ? e.to : labels[*u].next_hop;
      }
    }
  }
  return collect(labels, src);
}

std::map<NodeId, Route> min_hop_max_quality(const LinkGraph& g, NodeId src, OpCounter& ctr) {
  const MetricKind kind = MetricKind::InvEtx;
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kUnreached = ~std::uint32_t{0};
  std::vector<std::uint32_t> layer(n, kUnreached);
  std::vector<NodeId> order;
  order.reserve(n);
  layer[src] = 0;
  order.push_back(src);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId u = order[i];
    for (const auto& e : g.out_edges(u)) {
      if (layer[e.to] == kUnreached) {
        layer[e.to] = layer[u] + 1;
        order.push_back(e.to);
      }
    }
  }

  // `order` is BFS order, so every node appears after all of its
  // predecessors in the previous layer.
  std::vector<Label> labels(n);
  labels[src].weight = identity(kind);
  for (const NodeId u : order) {
    const PathWeight base = *labels[u].weight;
    for (const auto& e : g.out_edges(u)) {
      if (layer[e.to] != layer[u] + 1) continue;
      const PathWeight cand = combine(kind, base, link_weight(kind, e.link, ctr), ctr);
      Label& dst = labels[e.to];
      if (!dst.weight || better(kind, cand, *dst.weight, ctr)) {
        dst.weight = cand;
        dst.next_hop = (u == src) ? e.to : labels[u].next_hop;
      }
    }
  }
  return collect(labels, src);
}

}  // namespace

std::map<NodeId, Route> compute_paths(MetricKind kind, const LinkGraph& graph, NodeId src,
                                      OpCounter& ctr) {
  if (src >= graph.node_count()) throw std::out_of_range("source node");
  if (kind != graph.kind()) throw std::invalid_argument("graph was built for another metric");
  if (kind == MetricKind::InvEtx) return min_hop_max_quality(graph, src, ctr);
  return best_first(kind, graph, src, ctr);
}

}  // namespace olsrsim
