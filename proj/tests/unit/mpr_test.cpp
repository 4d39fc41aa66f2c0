#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <set>
#include <vector>

#include "olsrsim/mpr.hpp"
#include "olsrsim/rng.hpp"

namespace olsrsim {
namespace {

TEST(SelectMprs, StarHubIsTheOnlyRelay) {
  const std::vector<MprCandidate> c{
      {1, 0.9, {10, 11, 12}},
      {2, 1.0, {}},
      {3, 1.0, {}},
  };
  EXPECT_EQ(select_mprs(c), (std::set<NodeId>{1}));
}

TEST(SelectMprs, NoTwoHopNeighborsNoRelays) {
  const std::vector<MprCandidate> c{{1, 1.0, {}}, {2, 0.5, {}}};
  EXPECT_TRUE(select_mprs(c).empty());
  EXPECT_TRUE(select_mprs({}).empty());
}

TEST(SelectMprs, SoleReacherIsAlwaysChosen) {
  // 2 alone reaches 21; 1 covers more but cannot replace it.
  const std::vector<MprCandidate> c{{1, 1.0, {20, 22, 23}}, {2, 0.1, {21, 22}}};
  const auto m = select_mprs(c);
  EXPECT_TRUE(m.contains(2));
  EXPECT_TRUE(m.contains(1));
}

TEST(SelectMprs, TiesGoToBetterQualityThenLowerId) {
  const std::vector<MprCandidate> by_q{{1, 0.5, {9, 10}}, {2, 0.8, {9, 10}}};
  EXPECT_EQ(select_mprs(by_q), (std::set<NodeId>{2}));
  const std::vector<MprCandidate> by_id{{4, 0.8, {9, 10}}, {3, 0.8, {9, 10}}};
  EXPECT_EQ(select_mprs(by_id), (std::set<NodeId>{3}));
}

TEST(SelectMprs, RandomGraphsAreFullyCovered) {
  RngStream rng(12, StreamRole::Topology);
  constexpr std::uint32_t n = 12;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        if (rng.uniform() < 0.25) adj[a][b] = adj[b][a] = true;
      }
    }
    std::set<NodeId> one_hop;
    for (std::uint32_t v = 1; v < n; ++v) {
      if (adj[0][v]) one_hop.insert(v);
    }
    std::set<NodeId> two_hop;
    std::vector<MprCandidate> cands;
    for (NodeId v : one_hop) {
      MprCandidate c{v, rng.uniform(), {}};
      for (std::uint32_t t = 1; t < n; ++t) {
        if (adj[v][t] && !one_hop.contains(t)) {
          c.covers.push_back(t);
          two_hop.insert(t);
        }
      }
      cands.push_back(c);
    }

    const auto mprs = select_mprs(cands);
    std::set<NodeId> covered;
    for (const auto& c : cands) {
      if (mprs.contains(c.id)) covered.insert(c.covers.begin(), c.covers.end());
    }
    ASSERT_EQ(covered, two_hop) << "trial " << trial;
    for (NodeId m : mprs) ASSERT_TRUE(one_hop.contains(m));

    // A minimum cover found by brute force covers the same set and is never
    // larger than the greedy one.
    const std::size_t k = cands.size();
    std::size_t best = k;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::set<NodeId> cov;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) cov.insert(cands[i].covers.begin(), cands[i].covers.end());
      }
      if (cov == two_hop) best = std::min<std::size_t>(best, std::popcount(mask));
    }
    ASSERT_LE(best, mprs.size());
  }
}

}  // namespace
}  // namespace olsrsim
