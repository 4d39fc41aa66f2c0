#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "olsrsim/metrics.hpp"
#include "olsrsim/olsr_node.hpp"
#include "olsrsim/radio.hpp"

namespace olsrsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& reason);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// One simulation run. Defaults reproduce the reference scenario: 50 static
/// nodes in a 1000 m square, 20 CBR pairs of 64-byte packets, 900 s.
struct RunConfig {
  double arena_side_m = 1000.0;
  std::size_t node_count = 50;
  MetricKind metric = MetricKind::Etx;
  double rate_pps = 1.0;
  std::size_t flow_pairs = 20;
  double duration_s = 900.0;
  double warmup_s = 60.0;
  std::uint64_t seed = 1;
  LossModel loss;
  QueueConfig queue;
  OlsrParams olsr;
  CostModel cost;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

struct SweepConfig {
  RunConfig base;
  std::vector<MetricKind> metrics{MetricKind::Etx, MetricKind::InvEtx, MetricKind::Ml,
                                  MetricKind::Md};
  std::vector<double> rates{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  std::size_t replications = 5;
  std::uint64_t base_seed = 1;
  std::size_t workers = 1;

  /// Replication r of every metric and rate shares this seed, hence the
  /// same placement and flow endpoints.
  std::uint64_t seed_for(std::size_t replication) const { return base_seed + replication; }
  void validate() const;
};

/// A document with any `sweep.*` key is a sweep; otherwise a single run.
using LoadedConfig = std::variant<RunConfig, SweepConfig>;

/// Parses `key = value` lines; `#` starts a comment; nested settings use
/// dotted keys (radio.range_m, olsr.window_s, sweep.rates, ...). Unknown keys
/// and out-of-range values raise ConfigError.
LoadedConfig parse_config(std::string_view text);
LoadedConfig load_config(const std::filesystem::path& path);

/// Sets a single dotted key; used by the parser and by CLI overrides.
void set_config_value(RunConfig& run, SweepConfig* sweep, std::string_view key,
                      std::string_view value);

/// Shortened sweep for quick acceptance runs: 300 s, 3 replications,
/// rates {1, 4, 8, 12, 16}.
void apply_desk_scale(SweepConfig& sweep);

std::vector<std::string> known_config_keys();

}  // namespace olsrsim
