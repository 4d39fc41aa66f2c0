#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "olsrsim/config.hpp"
#include "olsrsim/stats.hpp"

namespace olsrsim {

/// A run inside a sweep failed; carries the run's coordinates.
class RunError : public std::runtime_error {
 public:
  RunError(MetricKind metric, double rate_pps, std::size_t replication, std::uint64_t seed,
           const std::string& cause);
  MetricKind metric;
  double rate_pps;
  std::size_t replication;
  std::uint64_t seed;
};

struct SummaryRow {
  MetricKind metric = MetricKind::Etx;
  double rate_pps = 0.0;
  std::size_t runs = 0;
  /// Indexed like numeric_columns().
  std::vector<double> mean;
  std::vector<double> sd;
};

/// Sample mean and standard deviation per (metric, rate), in the order the
/// groups first appear in `rows`.
std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Executes metrics x rates x replications runs (possibly on several worker
/// threads) and returns the rows in (metric, rate, replication) order.
std::vector<RunRow> run_sweep(const SweepConfig& sweep, const ProgressFn& progress = {});

std::string render_runs_csv(const std::vector<RunRow>& rows);
std::string render_summary_csv(const std::vector<SummaryRow>& summary);
/// One line per (metric, rate, measure).
std::string render_summary_long(const std::vector<SummaryRow>& summary);
/// Whitespace table: rate column followed by one mean column per metric.
std::string render_figure(const std::vector<SummaryRow>& summary, std::string_view column);

/// Writes runs.csv, summary.csv, summary_long.csv and the four fig_*.dat
/// tables into `out_dir` (created if missing).
void write_sweep_outputs(const std::vector<RunRow>& rows, const std::filesystem::path& out_dir);

}  // namespace olsrsim
