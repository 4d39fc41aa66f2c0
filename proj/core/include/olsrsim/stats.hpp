#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "olsrsim/metrics.hpp"

namespace olsrsim {

enum class DropCause : std::uint8_t { NoRoute, QueueDrop, LinkLoss, TtlExpired };
inline constexpr std::size_t kDropCauseCount = 4;

const char* to_string(DropCause cause);

/// Log-spaced latency histogram (200 bins per decade from 1 us), so the
/// p95 costs constant memory regardless of run length.
class DelayHistogram {
 public:
  void add(double ms);
  /// Upper edge of the bin holding the q-quantile; 0 when empty.
  double quantile(double q) const;
  std::uint64_t count() const { return count_; }

 private:
  static constexpr double kMinMs = 1e-3;
  static constexpr int kBinsPerDecade = 200;
  static constexpr int kDecades = 10;
  std::array<std::uint64_t, kBinsPerDecade * kDecades + 1> bins_{};
  std::uint64_t count_ = 0;
};

struct RunStats {
  std::uint64_t data_sent = 0;
  std::uint64_t data_delivered = 0;
  double delay_sum_ms = 0.0;
  DelayHistogram delays;
  std::array<std::uint64_t, kDropCauseCount> drops{};
  std::uint64_t control_tx = 0;
  std::uint64_t hello_tx = 0;
  std::uint64_t tc_tx = 0;
  std::uint64_t probe_tx = 0;
  double op_cost_total = 0.0;
  OpCounter ops;
  double measurement_window_s = 0.0;
  std::uint64_t in_flight_at_end = 0;

  std::uint64_t drops_total() const;
  std::uint64_t drop(DropCause c) const { return drops[static_cast<std::size_t>(c)]; }
  void record_delivery(double delay_ms);
  void record_drop(DropCause c) { ++drops[static_cast<std::size_t>(c)]; }

  double throughput_bps() const;
  double pdr() const;
  double e2ed_ms_mean() const;
  double e2ed_ms_p95() const;
  /// Control transmissions per delivered data packet; +inf when nothing was
  /// delivered.
  double nrl() const;
  /// sent == delivered + drops + in flight.
  bool conserved() const;
};

/// One line of runs.csv.
struct RunRow {
  std::uint64_t seed = 0;
  MetricKind metric = MetricKind::Etx;
  double rate_pps = 0.0;
  std::uint64_t data_sent = 0;
  std::uint64_t data_delivered = 0;
  double throughput_bps = 0.0;
  double pdr = 0.0;
  double e2ed_ms_mean = 0.0;
  double e2ed_ms_p95 = 0.0;
  double nrl = 0.0;
  std::uint64_t control_tx = 0;
  double op_cost_total = 0.0;
  std::array<std::uint64_t, kDropCauseCount> drops{};
};

RunRow finalize(const RunStats& stats, std::uint64_t seed, MetricKind metric, double rate_pps);

/// Numeric columns shared by runs.csv and the summary, in output order.
struct NumericColumn {
  std::string_view name;
  double (*get)(const RunRow&);
};
std::vector<NumericColumn> numeric_columns();

std::string runs_csv_header();
std::string to_csv_line(const RunRow& row);
/// Fixed-precision formatting used by every output file; "inf" for infinity.
std::string format_number(double v);

}  // namespace olsrsim
