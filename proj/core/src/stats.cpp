#include "olsrsim/stats.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "olsrsim/messages.hpp"

namespace olsrsim {

const char* to_string(DropCause cause) {
  switch (cause) {
    case DropCause::NoRoute: return "no_route";
    case DropCause::QueueDrop: return "queue";
    case DropCause::LinkLoss: return "link_loss";
    case DropCause::TtlExpired: return "ttl_expired";
  }
  return "?";
}

void DelayHistogram::add(double ms) {
  int bin = 0;
  if (ms > kMinMs) {
    bin = static_cast<int>(std::ceil(std::log10(ms / kMinMs) * kBinsPerDecade));
  }
  bin = std::clamp(bin, 0, static_cast<int>(bins_.size()) - 1);
  ++bins_[static_cast<std::size_t>(bin)];
  ++count_;
}

double DelayHistogram::quantile(double q) const {
  if (count_ == 0) return 0.0;
  const auto target = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(count_)));
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    seen += bins_[i];
    if (seen >= std::max<std::uint64_t>(target, 1)) {
      return kMinMs * std::pow(10.0, static_cast<double>(i) / kBinsPerDecade);
    }
  }
  return kMinMs * std::pow(10.0, static_cast<double>(bins_.size() - 1) / kBinsPerDecade);
}

std::uint64_t RunStats::drops_total() const {
  std::uint64_t n = 0;
  for (auto d : drops) n += d;
  return n;
}

void RunStats::record_delivery(double delay_ms) {
  ++data_delivered;
  delay_sum_ms += delay_ms;
  delays.add(delay_ms);
}

double RunStats::throughput_bps() const {
  if (!(measurement_window_s > 0.0)) return 0.0;
  return static_cast<double>(data_delivered) * kDataPayloadBytes * 8.0 / measurement_window_s;
}

double RunStats::pdr() const {
  return data_sent == 0 ? 0.0
                        : static_cast<double>(data_delivered) / static_cast<double>(data_sent);
}

double RunStats::e2ed_ms_mean() const {
  return data_delivered == 0 ? 0.0 : delay_sum_ms / static_cast<double>(data_delivered);
}

double RunStats::e2ed_ms_p95() const { return delays.quantile(0.95); }

double RunStats::nrl() const {
  if (data_delivered == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(control_tx) / static_cast<double>(data_delivered);
}

bool RunStats::conserved() const {
  return data_sent == data_delivered + drops_total() + in_flight_at_end;
}

RunRow finalize(const RunStats& s, std::uint64_t seed, MetricKind metric, double rate_pps) {
  RunRow r;
  r.seed = seed;
  r.metric = metric;
  r.rate_pps = rate_pps;
  r.data_sent = s.data_sent;
  r.data_delivered = s.data_delivered;
  r.throughput_bps = s.throughput_bps();
  r.pdr = s.pdr();
  r.e2ed_ms_mean = s.e2ed_ms_mean();
  r.e2ed_ms_p95 = s.e2ed_ms_p95();
  r.nrl = s.nrl();
  r.control_tx = s.control_tx;
  r.op_cost_total = s.op_cost_total;
  r.drops = s.drops;
  return r;
}

std::vector<NumericColumn> numeric_columns() {
  return {
      {"data_sent", [](const RunRow& r) { return static_cast<double>(r.data_sent); }},
      {"data_delivered", [](const RunRow& r) { return static_cast<double>(r.data_delivered); }},
      {"throughput_bps", [](const RunRow& r) { return r.throughput_bps; }},
      {"pdr", [](const RunRow& r) { return r.pdr; }},
      {"e2ed_ms_mean", [](const RunRow& r) { return r.e2ed_ms_mean; }},
      {"e2ed_ms_p95", [](const RunRow& r) { return r.e2ed_ms_p95; }},
      {"nrl", [](const RunRow& r) { return r.nrl; }},
      {"control_tx", [](const RunRow& r) { return static_cast<double>(r.control_tx); }},
      {"op_cost_total", [](const RunRow& r) { return r.op_cost_total; }},
      {"drop_no_route", [](const RunRow& r) { return static_cast<double>(r.drops[0]); }},
      {"drop_queue", [](const RunRow& r) { return static_cast<double>(r.drops[1]); }},
      {"drop_link_loss", [](const RunRow& r) { return static_cast<double>(r.drops[2]); }},
      {"drop_ttl_expired", [](const RunRow& r) { return static_cast<double>(r.drops[3]); }},
  };
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.6f}", v);
}

std::string runs_csv_header() {
  return "seed,metric,rate_pps,data_sent,data_delivered,throughput_bps,pdr,e2ed_ms_mean,"
         "e2ed_ms_p95,nrl,control_tx,op_cost_total,drop_no_route,drop_queue,drop_link_loss,"
         "drop_ttl_expired";
}

std::string to_csv_line(const RunRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.seed,
                     to_string(r.metric), format_number(r.rate_pps), r.data_sent,
                     r.data_delivered, format_number(r.throughput_bps), format_number(r.pdr),
                     format_number(r.e2ed_ms_mean), format_number(r.e2ed_ms_p95),
                     format_number(r.nrl), r.control_tx, format_number(r.op_cost_total),
                     r.drops[0], r.drops[1], r.drops[2], r.drops[3]);
}

}  // namespace olsrsim
