#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "olsrsim/radio.hpp"

namespace olsrsim {
namespace {

LossModel perfect(double range = 250.0) { return LossModel{range, 1.0, 1.0, range}; }

Frame probe_frame(NodeId src, std::uint32_t seq, NodeId dst = kBroadcast) {
  return make_frame(src, dst, ProbeMessage{src, seq, SimTime(0)}, kControlFrameBytes);
}

TEST(PlaceNodes, FiftyNodesInsideArena) {
  RngStream rng(1, StreamRole::Topology);
  const auto pos = place_nodes(50, 1000.0, rng);
  ASSERT_EQ(pos.size(), 50u);
  for (const auto& p : pos) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, 1000.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, 1000.0);
  }
}

TEST(PlaceNodes, DegenerateArenaPutsEveryoneAtOrigin) {
  RngStream rng(1, StreamRole::Topology);
  const auto pos = place_nodes(2, 0.0, rng);
  ASSERT_EQ(pos.size(), 2u);
  for (const auto& p : pos) {
    EXPECT_EQ(p.x, 0.0);
    EXPECT_EQ(p.y, 0.0);
  }
}

TEST(PlaceNodes, SameSeedSamePlacement) {
  RngStream a(5, StreamRole::Topology);
  RngStream b(5, StreamRole::Topology);
  const auto pa = place_nodes(30, 1000.0, a);
  const auto pb = place_nodes(30, 1000.0, b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(pa[i].x, pb[i].x);
    EXPECT_EQ(pa[i].y, pb[i].y);
  }
}

TEST(PlaceNodes, NeedsTwoNodes) {
  RngStream rng(1, StreamRole::Topology);
  EXPECT_THROW(place_nodes(1, 10.0, rng), std::invalid_argument);
}

TEST(LinkProbability, Boundaries) {
  const LossModel m{250.0, 1.0, 0.6, 100.0};
  EXPECT_EQ(link_success_probability({0, 0}, {0, 0}, m), 1.0);
  EXPECT_EQ(link_success_probability({0, 0}, {100, 0}, m), 1.0);
  EXPECT_DOUBLE_EQ(link_success_probability({0, 0}, {250, 0}, m), 0.6);
  EXPECT_EQ(link_success_probability({0, 0}, {250.001, 0}, m), 0.0);
  EXPECT_EQ(link_success_probability({0, 0}, {900, 0}, m), 0.0);
}

TEST(LinkProbability, InterpolatesLinearly) {
  // 175 m is halfway between 100 m and 250 m: (1.0 + 0.6) / 2.
  const LossModel m{250.0, 1.0, 0.6, 100.0};
  EXPECT_NEAR(link_success_probability({0, 0}, {175, 0}, m), 0.8, 1e-12);
}

TEST(LinkProbability, SymmetricForRandomPairs) {
  const LossModel m{250.0, 0.95, 0.4, 80.0};
  RngStream rng(3, StreamRole::Topology);
  for (int i = 0; i < 1000; ++i) {
    const Position a{rng.uniform(0, 300), rng.uniform(0, 300)};
    const Position b{rng.uniform(0, 300), rng.uniform(0, 300)};
    const double pab = link_success_probability(a, b, m);
    ASSERT_EQ(pab, link_success_probability(b, a, m));
    ASSERT_GE(pab, 0.0);
    ASSERT_LE(pab, 1.0);
  }
}

TEST(LossModel, ValidatesOrdering) {
  EXPECT_THROW((LossModel{250, 0.5, 0.6, 100}.validate()), std::invalid_argument);
  EXPECT_THROW((LossModel{250, 1.0, 0.6, 300}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(LossModel{}.validate());
}

TEST(Radio, ControlFrameArrivesAfterServiceAndPropagation) {
  Simulator sim;
  Radio radio(sim, {{0, 0}, {150, 0}}, perfect(), QueueConfig{50, 1e6},
              RngStream(1, StreamRole::Loss));
  std::vector<double> arrivals;
  radio.set_callbacks({.on_receive = [&](NodeId, const Frame&, SimTime t) {
    arrivals.push_back(t.sec());
  }});
  radio.transmit(0, probe_frame(0, 1));
  sim.run_until(SimTime(1));
  ASSERT_EQ(arrivals.size(), 1u);
  // 134 bytes * 8 / 1e6 = 1.072 ms, plus 150 m / 3e8 m/s.
  EXPECT_NEAR(arrivals[0], 134.0 * 8.0 / 1e6 + 150.0 / 3e8, 1e-12);
}

TEST(Radio, BroadcastReachesEveryInRangeNeighbor) {
  Simulator sim;
  Radio radio(sim, {{0, 0}, {100, 0}, {0, 100}, {-100, 0}, {600, 0}}, perfect(),
              QueueConfig{}, RngStream(1, StreamRole::Loss));
  std::vector<NodeId> receivers;
  radio.set_callbacks({.on_receive = [&](NodeId rx, const Frame&, SimTime) {
    receivers.push_back(rx);
  }});
  radio.transmit(0, probe_frame(0, 1));
  sim.run_until(SimTime(1));
  EXPECT_EQ(receivers, (std::vector<NodeId>{1, 2, 3}));
}

TEST(Radio, FullQueueDropsTail) {
  Simulator sim;
  Radio radio(sim, {{0, 0}, {10, 0}}, perfect(), QueueConfig{3, 1e6},
              RngStream(1, StreamRole::Loss));
  int drops = 0;
  radio.set_callbacks({.on_queue_drop = [&](NodeId, const Frame&) { ++drops; }});
  for (std::uint32_t i = 0; i < 3; ++i) EXPECT_TRUE(radio.transmit(0, probe_frame(0, i)));
  EXPECT_FALSE(radio.transmit(0, probe_frame(0, 3)));
  EXPECT_EQ(drops, 1);
  EXPECT_EQ(radio.queue_drops(), 1u);
  EXPECT_EQ(radio.queue_length(0), 3u);
}

TEST(Radio, ServesFifoAndNeverExceedsCapacity) {
  Simulator sim;
  constexpr std::size_t kCap = 8;
  Radio radio(sim, {{0, 0}, {10, 0}}, perfect(), QueueConfig{kCap, 1e6},
              RngStream(1, StreamRole::Loss));
  std::vector<std::uint32_t> order;
  radio.set_callbacks({.on_receive = [&](NodeId, const Frame& f, SimTime) {
    order.push_back(std::get<ProbeMessage>(*f.payload).seq);
  }});
  RngStream rng(2, StreamRole::Traffic);
  std::uint32_t seq = 0;
  std::size_t max_len = 0;
  for (int burst = 0; burst < 200; ++burst) {
    sim.schedule(SimTime(burst * 0.004), EventKind::FlowTick, [&] {
      const auto k = rng.below(5);
      for (std::uint64_t i = 0; i < k; ++i) radio.transmit(0, probe_frame(0, seq++));
      max_len = std::max(max_len, radio.queue_length(0));
    });
  }
  sim.run_until(SimTime(10));
  EXPECT_LE(max_len, kCap);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
  EXPECT_EQ(order.size() + radio.queue_drops(), seq);
}

TEST(Radio, EmpiricalDeliveryMatchesLinkProbability) {
  Simulator sim;
  const LossModel m{250.0, 1.0, 0.6, 100.0};
  Radio radio(sim, {{0, 0}, {175, 0}}, m, QueueConfig{20000, 1e6},
              RngStream(17, StreamRole::Loss));
  int received = 0;
  radio.set_callbacks({.on_receive = [&](NodeId, const Frame&, SimTime) { ++received; }});
  constexpr int n = 20000;
  for (int i = 0; i < n; ++i) radio.transmit(0, probe_frame(0, static_cast<std::uint32_t>(i), 1));
  sim.run_until(SimTime(1000));
  const double frac = static_cast<double>(received) / n;
  EXPECT_NEAR(frac, radio.link_probability(0, 1), 0.02);
  EXPECT_NEAR(radio.link_probability(0, 1), 0.8, 1e-12);
}

TEST(Radio, DataInFlightIsTracked) {
  Simulator sim;
  Radio radio(sim, {{0, 0}, {10, 0}}, perfect(), QueueConfig{}, RngStream(1, StreamRole::Loss));
  int delivered = 0;
  radio.set_callbacks({.on_receive = [&](NodeId, const Frame&, SimTime) { ++delivered; }});
  DataPacket pkt{0, 1, 0, 1, SimTime(0), 32};
  radio.transmit(0, make_frame(0, 1, pkt, 84));
  radio.transmit(0, make_frame(0, 1, pkt, 84));
  EXPECT_EQ(radio.data_frames_in_flight(), 2u);
  sim.run_until(SimTime(1));
  EXPECT_EQ(radio.data_frames_in_flight(), 0u);
  EXPECT_EQ(delivered, 2);
}

}  // namespace
}  // namespace olsrsim
