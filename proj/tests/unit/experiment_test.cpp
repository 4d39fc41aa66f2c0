#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "olsrsim/experiment.hpp"
#include "olsrsim/scenario.hpp"
#include "scenario_helpers.hpp"

namespace olsrsim {
namespace {

SweepConfig tiny_sweep() {
  SweepConfig s;
  s.base.node_count = 12;
  s.base.arena_side_m = 400;
  s.base.flow_pairs = 3;
  s.base.duration_s = 30;
  s.base.warmup_s = 15;
  s.replications = 2;
  s.rates = {1, 4};
  s.metrics = {MetricKind::Etx, MetricKind::Md};
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(ScreenTopology, ConnectedGraphKeepsPairs) {
  const std::vector<Position> pos = testing::line(5, 100.0);
  const auto report = screen_topology(pos, LossModel{});
  EXPECT_TRUE(report.connected());
  EXPECT_EQ(report.giant_size(), 5u);
  RngStream rng(1, StreamRole::Traffic, 1);
  std::size_t redrawn = 99;
  const auto pairs = draw_flow_pairs(report, 20, rng, &redrawn);
  EXPECT_EQ(redrawn, 0u);
  EXPECT_EQ(pairs.size(), 20u);
}

TEST(ScreenTopology, SpanningPairIsRedrawnInsideGiant) {
  // Island A: 0,1,2 (giant). Island B: 3,4.
  const std::vector<Position> pos{{0, 0}, {100, 0}, {200, 0}, {900, 900}, {950, 900}};
  const auto report = screen_topology(pos, LossModel{});
  EXPECT_EQ(report.component_count, 2u);
  EXPECT_EQ(report.giant_members, (std::vector<NodeId>{0, 1, 2}));
  RngStream rng(3, StreamRole::Traffic, 1);
  std::size_t redrawn = 0;
  const auto pairs = draw_flow_pairs(report, 200, rng, &redrawn);
  EXPECT_GT(redrawn, 0u);
  for (const auto& [a, b] : pairs) {
    EXPECT_NE(a, b);
    EXPECT_TRUE(report.same_component(a, b));
  }
}

TEST(ScreenTopology, ScatteredNodesAreDegenerate) {
  const std::vector<Position> pos{{0, 0}, {500, 0}, {1000, 0}};
  EXPECT_THROW(screen_topology(pos, LossModel{}), DegenerateTopology);
}

TEST(ScreenTopology, ReferencePlacementUsuallyConnected) {
  std::size_t connected = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RngStream rng(seed, StreamRole::Topology);
    const auto pos = place_nodes(50, 1000.0, rng);
    connected += screen_topology(pos, LossModel{}).connected() ? 1 : 0;
  }
  RecordProperty("connected_fraction", std::to_string(connected) + "/100");
  std::cout << "connected placements: " << connected << "/100\n";
  EXPECT_GT(connected, 50u);
}

TEST(RunSweep, OneByOneByOneEqualsSingleRun) {
  SweepConfig s = tiny_sweep();
  s.metrics = {MetricKind::Ml};
  s.rates = {4};
  s.replications = 1;
  s.base_seed = 7;
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 1u);
  RunConfig cfg = s.base;
  cfg.metric = MetricKind::Ml;
  cfg.rate_pps = 4;
  cfg.seed = 7;
  EXPECT_EQ(to_csv_line(rows[0]), to_csv_line(run_single(cfg)));
}

TEST(RunSweep, RowCountAndOrder) {
  SweepConfig s = tiny_sweep();
  s.metrics = {MetricKind::Etx, MetricKind::InvEtx, MetricKind::Ml, MetricKind::Md};
  s.rates.clear();
  for (int r = 1; r <= 16; ++r) s.rates.push_back(r);
  s.replications = 5;
  s.base.node_count = 6;
  s.base.arena_side_m = 200;
  s.base.flow_pairs = 1;
  s.base.duration_s = 4;
  s.base.warmup_s = 2;
  s.workers = 2;
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 320u);
  std::size_t i = 0;
  for (auto m : s.metrics) {
    for (double rate : s.rates) {
      for (std::size_t r = 0; r < s.replications; ++r, ++i) {
        ASSERT_EQ(rows[i].metric, m);
        ASSERT_EQ(rows[i].rate_pps, rate);
        ASSERT_EQ(rows[i].seed, s.seed_for(r));
      }
    }
  }
  const auto summary = summarize(rows);
  EXPECT_EQ(summary.size(), 64u);
  for (const auto& g : summary) EXPECT_EQ(g.runs, 5u);
}

TEST(RunSweep, ParallelAndSerialOutputsAreIdentical) {
  SweepConfig serial = tiny_sweep();
  SweepConfig parallel = tiny_sweep();
  parallel.workers = 3;
  EXPECT_EQ(render_runs_csv(run_sweep(serial)), render_runs_csv(run_sweep(parallel)));
}

TEST(RunSweep, ReplicationsShareTopologyAcrossMetrics) {
  SweepConfig s = tiny_sweep();
  s.rates = {4};
  const auto rows = run_sweep(s);
  // Same seed means same flows and rate, hence the same offered load.
  EXPECT_EQ(rows[0].data_sent, rows[2].data_sent);
  EXPECT_EQ(rows[1].data_sent, rows[3].data_sent);
}

TEST(WriteSweepOutputs, RerunIsByteIdentical) {
  const auto base = std::filesystem::temp_directory_path() / "olsrsim_experiment_test";
  std::filesystem::remove_all(base);
  const SweepConfig s = tiny_sweep();
  write_sweep_outputs(run_sweep(s), base / "a");
  write_sweep_outputs(run_sweep(s), base / "b");
  for (const char* f : {"runs.csv", "summary.csv", "summary_long.csv", "fig_throughput.dat",
                        "fig_e2ed.dat", "fig_nrl.dat", "fig_opcost.dat"}) {
    const auto a = slurp(base / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(base / "b" / f)) << f;
  }
  std::filesystem::remove_all(base);
}

TEST(Summarize, SampleStandardDeviation) {
  std::vector<RunRow> rows(3);
  const double thr[] = {10, 20, 30};
  for (int i = 0; i < 3; ++i) {
    rows[i].metric = MetricKind::Etx;
    rows[i].rate_pps = 1;
    rows[i].throughput_bps = thr[i];
  }
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 1u);
  const auto cols = numeric_columns();
  std::size_t k = 0;
  while (cols[k].name != "throughput_bps") ++k;
  EXPECT_DOUBLE_EQ(s[0].mean[k], 20.0);
  EXPECT_DOUBLE_EQ(s[0].sd[k], 10.0);
}

TEST(RenderFigure, RateColumnThenOneColumnPerMetric) {
  std::vector<RunRow> rows;
  for (auto m : {MetricKind::Etx, MetricKind::Ml}) {
    for (double rate : {1.0, 2.0}) {
      RunRow r;
      r.metric = m;
      r.rate_pps = rate;
      r.nrl = rate * (m == MetricKind::Etx ? 1 : 2);
      rows.push_back(r);
    }
  }
  const auto fig = render_figure(summarize(rows), "nrl");
  std::istringstream in(fig);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') data.push_back(line);
  }
  ASSERT_EQ(data.size(), 2u);
  std::istringstream row(data[1]);
  double rate = 0, etx = 0, ml = 0;
  row >> rate >> etx >> ml;
  EXPECT_EQ(rate, 2.0);
  EXPECT_EQ(etx, 2.0);
  EXPECT_EQ(ml, 4.0);
}

}  // namespace
}  // namespace olsrsim
