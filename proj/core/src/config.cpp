#include "olsrsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace olsrsim {

ConfigError::ConfigError(std::string key, const std::string& reason)
    : std::runtime_error(key.empty() ? reason : fmt::format("{}: {}", key, reason)),
      key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ConfigError(std::string(key), fmt::format("'{}' is not a number", v));
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(key), fmt::format("'{}' is not a non-negative integer", v));
  }
  return out;
}

MetricKind to_metric(std::string_view key, std::string_view v) {
  if (auto m = parse_metric(v)) return *m;
  throw ConfigError(std::string(key),
                    fmt::format("unknown metric '{}' (expected HOP, ETX, INVETX, ML or MD)", v));
}

std::vector<double> to_rates(std::string_view key, std::string_view v) {
  std::vector<double> out;
  for (auto item : split(v, ',')) {
    if (item.empty()) continue;
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto lo = to_uint(key, trim(item.substr(0, dots)));
      const auto hi = to_uint(key, trim(item.substr(dots + 2)));
      if (lo > hi) throw ConfigError(std::string(key), fmt::format("empty range '{}'", item));
      for (auto r = lo; r <= hi; ++r) out.push_back(static_cast<double>(r));
    } else {
      out.push_back(to_double(key, item));
    }
  }
  return out;
}

using Setter = std::function<void(RunConfig&, SweepConfig*, std::string_view key, std::string_view)>;

Setter run_double(double RunConfig::*field) {
  return [field](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
    c.*field = to_double(k, v);
  };
}

template <typename Struct, typename Field>
Setter nested_double(Struct RunConfig::*outer, Field Struct::*field) {
  return [outer, field](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
    (c.*outer).*field = static_cast<Field>(to_double(k, v));
  };
}

Setter sweep_only(std::function<void(SweepConfig&, std::string_view, std::string_view)> fn) {
  return [fn = std::move(fn)](RunConfig&, SweepConfig* s, std::string_view k, std::string_view v) {
    if (!s) throw ConfigError(std::string(k), "sweep keys are not valid for a single run");
    fn(*s, k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"arena_side_m", run_double(&RunConfig::arena_side_m)},
      {"node_count",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         c.node_count = to_uint(k, v);
       }},
      {"metric",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         c.metric = to_metric(k, v);
       }},
      {"rate_pps", run_double(&RunConfig::rate_pps)},
      {"flow_pairs",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         c.flow_pairs = to_uint(k, v);
       }},
      {"duration_s", run_double(&RunConfig::duration_s)},
      {"warmup_s", run_double(&RunConfig::warmup_s)},
      {"seed",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         c.seed = to_uint(k, v);
       }},
      {"radio.range_m", nested_double(&RunConfig::loss, &LossModel::range_m)},
      {"radio.d0_m", nested_double(&RunConfig::loss, &LossModel::d0_m)},
      {"radio.p_near", nested_double(&RunConfig::loss, &LossModel::p_near)},
      {"radio.p_edge", nested_double(&RunConfig::loss, &LossModel::p_edge)},
      {"radio.bitrate_bps", nested_double(&RunConfig::queue, &QueueConfig::bitrate_bps)},
      {"radio.queue_capacity",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         c.queue.capacity = to_uint(k, v);
       }},
      {"olsr.hello_interval_s", nested_double(&RunConfig::olsr, &OlsrParams::hello_interval_s)},
      {"olsr.window_s", nested_double(&RunConfig::olsr, &OlsrParams::window_s)},
      {"olsr.tc_interval_s", nested_double(&RunConfig::olsr, &OlsrParams::tc_interval_s)},
      {"olsr.probe_interval_s", nested_double(&RunConfig::olsr, &OlsrParams::probe_interval_s)},
      {"olsr.owd_alpha", nested_double(&RunConfig::olsr, &OlsrParams::owd_alpha)},
      {"olsr.neighbor_hold_mult",
       nested_double(&RunConfig::olsr, &OlsrParams::neighbor_hold_mult)},
      {"olsr.topology_hold_mult",
       nested_double(&RunConfig::olsr, &OlsrParams::topology_hold_mult)},
      {"olsr.jitter_frac", nested_double(&RunConfig::olsr, &OlsrParams::jitter_frac)},
      {"olsr.route_debounce_s", nested_double(&RunConfig::olsr, &OlsrParams::route_debounce_s)},
      {"olsr.dup_hold_s", nested_double(&RunConfig::olsr, &OlsrParams::dup_hold_s)},
      {"olsr.tc_ttl",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         const auto ttl = to_uint(k, v);
         if (ttl == 0 || ttl > 255) throw ConfigError(std::string(k), "must be in 1..255");
         c.olsr.tc_ttl = static_cast<std::uint8_t>(ttl);
       }},
      {"olsr.flooding",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         if (v == "mpr") {
           c.olsr.flooding = FloodingMode::Mpr;
         } else if (v == "full") {
           c.olsr.flooding = FloodingMode::Full;
         } else {
           throw ConfigError(std::string(k), fmt::format("'{}' is not one of mpr, full", v));
         }
       }},
      {"olsr.tc_advertise",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         if (v == "selectors") {
           c.olsr.tc_advertise = TcAdvertise::Selectors;
         } else if (v == "all") {
           c.olsr.tc_advertise = TcAdvertise::AllNeighbors;
         } else {
           throw ConfigError(std::string(k), fmt::format("'{}' is not one of selectors, all", v));
         }
       }},
      {"olsr.probes",
       [](RunConfig& c, SweepConfig*, std::string_view k, std::string_view v) {
         if (v == "auto") {
           c.olsr.probes.reset();
         } else if (v == "on" || v == "true") {
           c.olsr.probes = true;
         } else if (v == "off" || v == "false") {
           c.olsr.probes = false;
         } else {
           throw ConfigError(std::string(k), fmt::format("'{}' is not one of auto, on, off", v));
         }
       }},
      {"cost.add", nested_double(&RunConfig::cost, &CostModel::add)},
      {"cost.mult", nested_double(&RunConfig::cost, &CostModel::mult)},
      {"cost.div", nested_double(&RunConfig::cost, &CostModel::div)},
      {"sweep.metrics", sweep_only([](SweepConfig& s, std::string_view k, std::string_view v) {
         s.metrics.clear();
         for (auto item : split(v, ',')) {
           if (!item.empty()) s.metrics.push_back(to_metric(k, item));
         }
       })},
      {"sweep.rates", sweep_only([](SweepConfig& s, std::string_view k, std::string_view v) {
         s.rates = to_rates(k, v);
       })},
      {"sweep.replications", sweep_only([](SweepConfig& s, std::string_view k,
                                           std::string_view v) { s.replications = to_uint(k, v); })},
      {"sweep.base_seed", sweep_only([](SweepConfig& s, std::string_view k, std::string_view v) {
         s.base_seed = to_uint(k, v);
       })},
      {"sweep.workers", sweep_only([](SweepConfig& s, std::string_view k, std::string_view v) {
         s.workers = to_uint(k, v);
       })},
  };
  return table;
}

void require(bool ok, const char* key, const std::string& reason) {
  if (!ok) throw ConfigError(key, reason);
}

}  // namespace

void RunConfig::validate() const {
  require(arena_side_m > 0.0, "arena_side_m", "must be positive");
  require(node_count >= 2, "node_count", "must be at least 2");
  require(rate_pps >= 1.0, "rate_pps", "must be at least 1 packet per second");
  require(flow_pairs >= 1, "flow_pairs", "must be positive");
  require(duration_s > 0.0, "duration_s", "must be positive");
  require(warmup_s >= 0.0 && warmup_s < duration_s, "warmup_s", "must lie in [0, duration_s)");
  require(loss.range_m > 0.0, "radio.range_m", "must be positive");
  require(loss.d0_m >= 0.0 && loss.d0_m <= loss.range_m, "radio.d0_m",
          "must lie in [0, radio.range_m]");
  require(loss.p_near >= 0.0 && loss.p_near <= 1.0, "radio.p_near", "must lie in [0, 1]");
  require(loss.p_edge >= 0.0 && loss.p_edge <= loss.p_near, "radio.p_edge",
          "must lie in [0, radio.p_near]");
  require(queue.bitrate_bps > 0.0, "radio.bitrate_bps", "must be positive");
  require(queue.capacity >= 1, "radio.queue_capacity", "must be positive");
  require(cost.add > 0.0, "cost.add", "must be positive");
  require(cost.mult > 0.0, "cost.mult", "must be positive");
  require(cost.div > 0.0, "cost.div", "must be positive");
  try {
    olsr.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(what.substr(0, what.find(' ')), what);
  }
}

void SweepConfig::validate() const {
  base.validate();
  require(!metrics.empty(), "sweep.metrics", "must name at least one metric");
  require(!rates.empty(), "sweep.rates", "must list at least one rate");
  for (double r : rates) require(r >= 1.0, "sweep.rates", "every rate must be at least 1");
  require(replications >= 1, "sweep.replications", "must be positive");
  require(workers >= 1, "sweep.workers", "must be positive");
}

void set_config_value(RunConfig& run, SweepConfig* sweep, std::string_view key,
                      std::string_view value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError(std::string(key), "unknown key");
  it->second(run, sweep, key, trim(value));
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : setters()) out.push_back(k);
  return out;
}

LoadedConfig parse_config(std::string_view text) {
  SweepConfig sweep;
  bool is_sweep = false;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", fmt::format("line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.starts_with("sweep.")) is_sweep = true;
    set_config_value(sweep.base, &sweep, key, value);
  }
  if (is_sweep) {
    sweep.validate();
    return sweep;
  }
  sweep.base.validate();
  return sweep.base;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_desk_scale(SweepConfig& sweep) {
  sweep.base.duration_s = 300.0;
  sweep.replications = 3;
  sweep.rates = {1, 4, 8, 12, 16};
}

}  // namespace olsrsim
