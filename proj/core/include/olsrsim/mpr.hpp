#pragma once

#include <set>
#include <vector>

#include "olsrsim/messages.hpp"

namespace olsrsim {

struct MprCandidate {
  NodeId id;
  double q;
  /// Strict two-hop neighbors reachable through this neighbor.
  std::vector<NodeId> covers;
};

/// Greedy MPR heuristic: first every neighbor that is the only way to reach
/// some two-hop node, then repeatedly the neighbor covering the most still
/// uncovered two-hop nodes (ties: higher q, then lower id).
std::set<NodeId> select_mprs(const std::vector<MprCandidate>& candidates);

}  // namespace olsrsim
