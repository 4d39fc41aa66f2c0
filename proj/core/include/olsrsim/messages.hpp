#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "olsrsim/sim_engine.hpp"

namespace olsrsim {

using NodeId = std::uint32_t;
inline constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max();

/// How the HELLO originator currently regards a reported neighbor.
enum class NeighborStatus : std::uint8_t { Heard, Symmetric, Mpr };

struct NeighborReport {
  NodeId neighbor;
  /// HELLOs of `neighbor` the originator received in its last window.
  std::uint32_t hellos_received;
  NeighborStatus status;
};

struct HelloMessage {
  NodeId originator;
  std::uint32_t seq;
  std::vector<NeighborReport> neighbor_reports;
};

struct AdvertisedLink {
  NodeId neighbor;
  double d_f;  // originator -> neighbor
  double d_r;  // neighbor -> originator
  std::optional<double> owd_ms;
};

struct TcMessage {
  NodeId originator;
  std::uint32_t seq;
  std::uint8_t ttl;
  std::vector<AdvertisedLink> advertised;
};

struct ProbeMessage {
  NodeId originator;
  std::uint32_t seq;
  SimTime sent_at;
};

struct DataPacket {
  std::uint32_t flow_id;
  std::uint64_t seq;
  NodeId src;
  NodeId dst;
  SimTime sent_at;
  std::uint8_t ttl;
};

enum class PayloadKind : std::uint8_t { Hello, Tc, Probe, Data };

const char* to_string(PayloadKind kind);

using Payload = std::variant<HelloMessage, TcMessage, ProbeMessage, DataPacket>;

/// A link-layer frame. The payload is shared so a broadcast can be delivered
/// to many receivers without copying.
struct Frame {
  NodeId src = 0;
  NodeId dst = kBroadcast;
  std::uint32_t size_bytes = 1;
  PayloadKind kind = PayloadKind::Hello;
  std::shared_ptr<const Payload> payload;
  SimTime enqueue_time;
  std::uint64_t queue_seq = 0;

  bool is_broadcast() const { return dst == kBroadcast; }
};

inline constexpr std::uint32_t kControlFrameBytes = 134;
inline constexpr std::uint32_t kDataPayloadBytes = 64;
inline constexpr std::uint32_t kDataHeaderBytes = 20;

Frame make_frame(NodeId src, NodeId dst, Payload payload, std::uint32_t size_bytes);

}  // namespace olsrsim
