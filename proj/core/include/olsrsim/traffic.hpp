#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "olsrsim/messages.hpp"
#include "olsrsim/radio.hpp"
#include "olsrsim/rng.hpp"
#include "olsrsim/sim_engine.hpp"
#include "olsrsim/stats.hpp"

namespace olsrsim {

struct FlowSpec {
  NodeId src = 0;
  NodeId dst = 0;
  double rate_pps = 1.0;
  std::uint32_t payload_bytes = kDataPayloadBytes;
  SimTime start;
  SimTime stop;
};

class InvalidFlow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PacketRecord {
  std::uint32_t flow_id = 0;
  std::uint64_t seq = 0;
  SimTime sent_at;
  std::optional<SimTime> delivered_at;
  std::optional<DropCause> drop_cause;
};

inline constexpr std::uint8_t kInitialDataTtl = 32;

/// Constant-bit-rate sources plus hop-by-hop forwarding over the routing
/// tables. Outcomes are streamed into RunStats; only the most recent
/// finished packets are kept for inspection.
class TrafficEngine {
 public:
  using RouteLookup = std::function<std::optional<NodeId>(NodeId node, NodeId dst)>;

  TrafficEngine(Simulator& sim, Radio& radio, RouteLookup lookup, RunStats& stats,
                std::size_t record_capacity = 1024);

  /// Each flow emits one packet every 1/rate_pps seconds in [start, stop),
  /// after a random offset in [0, 1/rate_pps). Throws InvalidFlow.
  void start_flows(const std::vector<FlowSpec>& specs, RngStream& rng);

  /// Sends `packet` one hop closer to its destination (or drops it).
  void forward_data(NodeId node, DataPacket packet);
  /// Radio hand-off of a data frame that reached `node`.
  void on_arrival(NodeId node, const DataPacket& packet, SimTime rx_time);
  void on_queue_drop(const DataPacket& packet) { finish(packet, DropCause::QueueDrop); }
  void on_link_loss(const DataPacket& packet) { finish(packet, DropCause::LinkLoss); }

  const std::vector<FlowSpec>& flows() const { return flows_; }
  const std::deque<PacketRecord>& recent() const { return recent_; }

 private:
  void emit(std::uint32_t flow_id, SimTime first, double period, std::uint64_t index);
  void finish(const DataPacket& packet, DropCause cause);
  void remember(PacketRecord rec);

  Simulator& sim_;
  Radio& radio_;
  RouteLookup lookup_;
  RunStats& stats_;
  std::size_t record_capacity_;
  std::vector<FlowSpec> flows_;
  std::deque<PacketRecord> recent_;
};

}  // namespace olsrsim
