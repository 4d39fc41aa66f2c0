#include "olsrsim/traffic.hpp"

#include <fmt/format.h>

namespace olsrsim {

TrafficEngine::TrafficEngine(Simulator& sim, Radio& radio, RouteLookup lookup, RunStats& stats,
                             std::size_t record_capacity)
    : sim_(sim),
      radio_(radio),
      lookup_(std::move(lookup)),
      stats_(stats),
      record_capacity_(record_capacity) {}

void TrafficEngine::start_flows(const std::vector<FlowSpec>& specs, RngStream& rng) {
  for (const FlowSpec& f : specs) {
    if (f.src == f.dst) throw InvalidFlow(fmt::format("flow from node {} to itself", f.src));
    if (!(f.rate_pps > 0.0)) throw InvalidFlow("flow rate must be positive");
    if (f.src >= radio_.node_count() || f.dst >= radio_.node_count()) {
      throw InvalidFlow(fmt::format("flow {}->{} names an unknown node", f.src, f.dst));
    }
  }
  for (const FlowSpec& f : specs) {
    const auto id = static_cast<std::uint32_t>(flows_.size());
    flows_.push_back(f);
    const double period = 1.0 / f.rate_pps;
    const SimTime first = f.start + rng.uniform() * period;
    if (first < f.stop) {
      sim_.schedule(first, EventKind::FlowTick, [this, id, first, period] { emit(id, first, period, 0); });
    }
  }
}

void TrafficEngine::emit(std::uint32_t flow_id, SimTime first, double period, std::uint64_t index) {
  const FlowSpec& f = flows_[flow_id];
  DataPacket pkt{flow_id, index, f.src, f.dst, sim_.now(), kInitialDataTtl};
  ++stats_.data_sent;
  forward_data(f.src, pkt);

  const SimTime next = first + static_cast<double>(index + 1) * period;
  if (next < f.stop) {
    sim_.schedule(next, EventKind::FlowTick,
                  [this, flow_id, first, period, index] { emit(flow_id, first, period, index + 1); });
  }
}

void TrafficEngine::forward_data(NodeId node, DataPacket packet) {
  if (packet.ttl == 0) {
    finish(packet, DropCause::TtlExpired);
    return;
  }
  const auto hop = lookup_(node, packet.dst);
  if (!hop) {
    finish(packet, DropCause::NoRoute);
    return;
  }
  packet.ttl = static_cast<std::uint8_t>(packet.ttl - 1);
  const std::uint32_t size = flows_[packet.flow_id].payload_bytes + kDataHeaderBytes;
  // A full queue is reported back through the radio's drop callback.
  radio_.transmit(node, make_frame(node, *hop, packet, size));
}

void TrafficEngine::on_arrival(NodeId node, const DataPacket& packet, SimTime rx_time) {
  if (node == packet.dst) {
    stats_.record_delivery((rx_time - packet.sent_at) * 1000.0);
    remember(PacketRecord{packet.flow_id, packet.seq, packet.sent_at, rx_time, std::nullopt});
    return;
  }
  forward_data(node, packet);
}

void TrafficEngine::finish(const DataPacket& packet, DropCause cause) {
  stats_.record_drop(cause);
  remember(PacketRecord{packet.flow_id, packet.seq, packet.sent_at, std::nullopt, cause});
}

void TrafficEngine::remember(PacketRecord rec) {
  if (record_capacity_ == 0) return;
  if (recent_.size() == record_capacity_) recent_.pop_front();
  recent_.push_back(rec);
}

}  // namespace olsrsim
