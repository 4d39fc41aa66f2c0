#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "olsrsim/rng.hpp"
#include "olsrsim/scenario.hpp"
#include "olsrsim/sim_engine.hpp"

namespace olsrsim {
namespace {

TEST(Simulator, FiresInTimeOrder) {
  Simulator sim;
  std::vector<double> fired;
  sim.schedule(SimTime(5), EventKind::StatsSample, [&] { fired.push_back(sim.now().sec()); });
  sim.schedule(SimTime(3), EventKind::StatsSample, [&] { fired.push_back(sim.now().sec()); });
  sim.run_until(SimTime(10));
  EXPECT_EQ(fired, (std::vector<double>{3.0, 5.0}));
}

TEST(Simulator, SimultaneousEventsFireInInsertionOrder) {
  Simulator sim;
  std::vector<std::uint64_t> order;
  std::vector<std::uint64_t> seqs;
  for (int i = 0; i < 10; ++i) {
    const auto seq = sim.schedule(SimTime(7), EventKind::StatsSample, [&order, i] {
      order.push_back(static_cast<std::uint64_t>(i));
    });
    seqs.push_back(seq);
  }
  sim.run_until(SimTime(7));
  EXPECT_EQ(order, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_LT(seqs[4], seqs[9]);
}

TEST(Simulator, RejectsSchedulingInThePast) {
  Simulator sim;
  sim.run_until(SimTime(2));
  EXPECT_THROW(sim.schedule(SimTime(1), EventKind::StatsSample, [] {}), SchedulingInPast);
  EXPECT_NO_THROW(sim.schedule(SimTime(2), EventKind::StatsSample, [] {}));
}

TEST(Simulator, HandlerSchedulingIntoThePastIsAnError) {
  Simulator sim;
  sim.schedule(SimTime(4), EventKind::StatsSample,
               [&] { sim.schedule(SimTime(3), EventKind::StatsSample, [] {}); });
  EXPECT_THROW(sim.run_until(SimTime(10)), SchedulingInPast);
}

TEST(Simulator, EmptyQueueAdvancesClock) {
  Simulator sim;
  const auto out = sim.run_until(SimTime(10));
  EXPECT_EQ(out.events_executed, 0u);
  EXPECT_EQ(out.clock.sec(), 10.0);
}

TEST(Simulator, ExecutesOnlyEventsUpToHorizon) {
  Simulator sim;
  int n = 0;
  for (double t : {1.0, 2.0, 3.0, 12.0}) {
    sim.schedule(SimTime(t), EventKind::StatsSample, [&] { ++n; });
  }
  const auto out = sim.run_until(SimTime(10));
  EXPECT_EQ(out.events_executed, 3u);
  EXPECT_EQ(n, 3);
  EXPECT_EQ(sim.now().sec(), 10.0);
  EXPECT_EQ(sim.pending(), 1u);
}

TEST(Simulator, TimestampsNeverDecrease) {
  Simulator sim;
  RngStream rng(3, StreamRole::Jitter);
  double last = 0.0;
  bool monotone = true;
  std::function<void()> chain = [&] {
    monotone = monotone && sim.now().sec() >= last;
    last = sim.now().sec();
    if (sim.executed() < 2000) {
      sim.schedule_in(rng.uniform() * 0.1, EventKind::StatsSample, chain);
      sim.schedule_in(rng.uniform() * 0.5, EventKind::StatsSample, [] {});
    }
  };
  sim.schedule(SimTime(0), EventKind::StatsSample, chain);
  sim.run_until(SimTime(1000));
  EXPECT_TRUE(monotone);
}

TEST(SimTime, RejectsNegativeAndNan) {
  EXPECT_THROW(SimTime::seconds(-1.0), std::invalid_argument);
  EXPECT_THROW(SimTime::seconds(std::nan("")), std::invalid_argument);
  EXPECT_DOUBLE_EQ(SimTime::millis(1.5).sec(), 0.0015);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42, StreamRole::Loss);
  RngStream b(42, StreamRole::Loss);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
}

TEST(RngStream, KnownFirstDrawsArePlatformStable) {
  // Frozen from this implementation; integer-only arithmetic.
  RngStream rng(1, StreamRole::Topology);
  const std::uint64_t first = rng.next_u64();
  RngStream again(1, StreamRole::Topology);
  EXPECT_EQ(again.next_u64(), first);
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(RngStream, UniformMeanIsCentred) {
  RngStream rng(7, StreamRole::Traffic);
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  const double mean = sum / n;
  EXPECT_GE(mean, 0.495);
  EXPECT_LE(mean, 0.505);
}

TEST(RngStream, DistinctRolesGiveDistinctSequences) {
  RngStream a(42, StreamRole::Topology);
  RngStream b(42, StreamRole::Loss);
  RngStream c(42, StreamRole::Topology, 1);
  int equal_ab = 0;
  int equal_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    equal_ab += x == b.uniform();
    equal_ac += x == c.uniform();
  }
  EXPECT_EQ(equal_ab, 0);
  EXPECT_EQ(equal_ac, 0);
}

TEST(RngStream, BelowIsInRange) {
  RngStream rng(9, StreamRole::Traffic);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Determinism, IdenticalConfigGivesIdenticalRun) {
  RunConfig cfg;
  cfg.node_count = 20;
  cfg.arena_side_m = 600;
  cfg.duration_s = 80;
  cfg.warmup_s = 20;
  cfg.rate_pps = 4;
  cfg.flow_pairs = 5;
  cfg.seed = 11;

  auto run_once = [&] {
    Scenario s(cfg);
    const RunStats stats = s.run();
    return std::make_pair(s.sim().executed(), to_csv_line(finalize(stats, cfg.seed, cfg.metric,
                                                                   cfg.rate_pps)));
  };
  const auto first = run_once();
  const auto second = run_once();
  EXPECT_GT(first.first, 1000u);
  EXPECT_EQ(first, second);
}

}  // namespace
}  // namespace olsrsim
