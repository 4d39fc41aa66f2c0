// olsrsim: run single simulations, metric/rate sweeps, or topology screens.
//
// Exit codes: 0 success, 2 configuration error, 3 degenerate topology,
// 4 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "olsrsim/config.hpp"
#include "olsrsim/experiment.hpp"
#include "olsrsim/rng.hpp"
#include "olsrsim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTopology = 3;
constexpr int kExitInvariant = 4;

struct Overrides {
  std::string config;
  std::vector<std::string> metrics;
  std::vector<double> rates;
  std::uint64_t seed = 0;
  std::size_t replications = 0;
  double duration = 0.0;
  std::size_t jobs = 0;
  std::string out_dir = ".";
  bool desk_scale = false;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed (base seed for sweeps)");
  cmd->add_option("--duration", o.duration, "simulated seconds");
  cmd->add_option("--set", o.sets, "override any config key, e.g. --set radio.range_m=200");
}

olsrsim::SweepConfig load(const Overrides& o, CLI::App* cmd) {
  olsrsim::SweepConfig sweep;
  if (!o.config.empty()) {
    auto loaded = olsrsim::load_config(o.config);
    if (auto* s = std::get_if<olsrsim::SweepConfig>(&loaded)) {
      sweep = *s;
    } else {
      sweep.base = std::get<olsrsim::RunConfig>(loaded);
      sweep.base_seed = sweep.base.seed;
    }
  }
  if (o.desk_scale) olsrsim::apply_desk_scale(sweep);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw olsrsim::ConfigError(kv, "--set expects key=value");
    olsrsim::set_config_value(sweep.base, &sweep, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (cmd->count("--seed")) {
    sweep.base.seed = o.seed;
    sweep.base_seed = o.seed;
  }
  if (cmd->count("--duration")) sweep.base.duration_s = o.duration;
  if (!o.metrics.empty()) {
    sweep.metrics.clear();
    for (const auto& m : o.metrics) {
      auto kind = olsrsim::parse_metric(m);
      if (!kind) throw olsrsim::ConfigError("metric", fmt::format("unknown metric '{}'", m));
      sweep.metrics.push_back(*kind);
    }
    sweep.base.metric = sweep.metrics.front();
  }
  if (!o.rates.empty()) {
    sweep.rates = o.rates;
    sweep.base.rate_pps = o.rates.front();
  }
  if (o.replications) sweep.replications = o.replications;
  if (o.jobs) sweep.workers = o.jobs;
  return sweep;
}

int run_cmd(const Overrides& o, CLI::App* cmd) {
  const auto sweep = load(o, cmd);
  olsrsim::RunConfig cfg = sweep.base;
  cfg.validate();
  const auto row = olsrsim::run_single(cfg);
  olsrsim::write_sweep_outputs({row}, o.out_dir);
  fmt::print("{}\n{}\n", olsrsim::runs_csv_header(), olsrsim::to_csv_line(row));
  return kExitOk;
}

int sweep_cmd(const Overrides& o, CLI::App* cmd) {
  const auto sweep = load(o, cmd);
  sweep.validate();
  const auto rows = olsrsim::run_sweep(sweep, [](std::size_t done, std::size_t total) {
    fmt::print(stderr, "\r[{}/{}] runs complete", done, total);
    if (done == total) fmt::print(stderr, "\n");
  });
  olsrsim::write_sweep_outputs(rows, o.out_dir);
  fmt::print("{} runs written to {}\n", rows.size(), o.out_dir);
  return kExitOk;
}

int screen_cmd(const Overrides& o, CLI::App* cmd, std::size_t seeds) {
  const auto sweep = load(o, cmd);
  const auto& cfg = sweep.base;
  cfg.validate();
  std::size_t connected = 0;
  fmt::print("seed,components,giant_size,connected\n");
  for (std::size_t i = 0; i < seeds; ++i) {
    const auto seed = cfg.seed + i;
    olsrsim::RngStream rng(seed, olsrsim::StreamRole::Topology);
    const auto pos = olsrsim::place_nodes(cfg.node_count, cfg.arena_side_m, rng);
    const auto report = olsrsim::screen_topology(pos, cfg.loss);
    connected += report.connected() ? 1 : 0;
    fmt::print("{},{},{},{}\n", seed, report.component_count, report.giant_size(),
               report.connected() ? "yes" : "no");
  }
  fmt::print(stderr, "connected in {}/{} seeds\n", connected, seeds);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static wireless multi-hop network simulator with pluggable OLSR link metrics"};
  app.require_subcommand(1);

  Overrides run_o;
  auto* run = app.add_subcommand("run", "execute a single simulation run");
  add_common(run, run_o);
  std::string run_metric;
  double run_rate = 0.0;
  run->add_option("--metric", run_metric, "HOP, ETX, INVETX, ML or MD");
  run->add_option("--rate", run_rate, "CBR packets per second per flow");
  run->add_option("--out-dir", run_o.out_dir, "directory for runs.csv and summaries");

  Overrides sweep_o;
  auto* sweep = app.add_subcommand("sweep", "run metrics x rates x replications");
  add_common(sweep, sweep_o);
  sweep->add_option("--metric", sweep_o.metrics, "metrics to compare (repeatable)")->delimiter(',');
  sweep->add_option("--rate", sweep_o.rates, "rates to sweep (repeatable)")->delimiter(',');
  sweep->add_option("--replications", sweep_o.replications, "replications per point");
  sweep->add_option("--out-dir", sweep_o.out_dir, "output directory");
  sweep->add_option("--jobs", sweep_o.jobs, "parallel worker threads");
  sweep->add_flag("--desk-scale", sweep_o.desk_scale,
                  "300 s, 3 replications, rates 1,4,8,12,16");

  Overrides screen_o;
  std::size_t screen_seeds = 100;
  auto* screen = app.add_subcommand("screen", "report connectivity of random placements");
  add_common(screen, screen_o);
  screen->add_option("--seeds", screen_seeds, "number of consecutive seeds to screen");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      if (!run_metric.empty()) run_o.metrics = {run_metric};
      if (run->count("--rate")) run_o.rates = {run_rate};
      return run_cmd(run_o, run);
    }
    if (*sweep) return sweep_cmd(sweep_o, sweep);
    if (*screen) return screen_cmd(screen_o, screen, screen_seeds);
  } catch (const olsrsim::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const olsrsim::DegenerateTopology& e) {
    fmt::print(stderr, "degenerate topology: {}\n", e.what());
    return kExitTopology;
  } catch (const olsrsim::InvariantViolation& e) {
    fmt::print(stderr, "invariant violation: {}\n", e.what());
    return kExitInvariant;
  } catch (const olsrsim::RunError& e) {
    fmt::print(stderr, "run failed: {}\n", e.what());
    return kExitInvariant;
  } catch (const std::logic_error& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kExitInvariant;
  }
  return kExitOk;
}
