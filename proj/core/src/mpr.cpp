#include "olsrsim/mpr.hpp"

#include <map>

namespace olsrsim {

std::set<NodeId> select_mprs(const std::vector<MprCandidate>& candidates) {
  std::map<NodeId, std::vector<std::size_t>> reachers;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (NodeId t : candidates[i].covers) reachers[t].push_back(i);
  }
  std::set<NodeId> uncovered;
  for (const auto& [t, _] : reachers) uncovered.insert(t);

  std::set<NodeId> mprs;
  auto take = [&](std::size_t i) {
    mprs.insert(candidates[i].id);
    for (NodeId t : candidates[i].covers) uncovered.erase(t);
  };

  for (const auto& [t, via] : reachers) {
    if (via.size() == 1 && !mprs.contains(candidates[via.front()].id)) take(via.front());
  }

  while (!uncovered.empty()) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mprs.contains(candidates[i].id)) continue;
      std::size_t gain = 0;
      for (NodeId t : candidates[i].covers) gain += uncovered.contains(t) ? 1 : 0;
      if (gain == 0) continue;
      bool wins = best == candidates.size() || gain > best_gain;
      if (!wins && gain == best_gain) {
        const auto& a = candidates[i];
        const auto& b = candidates[best];
        wins = a.q > b.q || (a.q == b.q && a.id < b.id);
      }
      if (wins) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == candidates.size()) break;
    take(best);
  }
  return mprs;
}

}  // namespace olsrsim
