#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "olsrsim/messages.hpp"
#include "olsrsim/rng.hpp"
#include "olsrsim/sim_engine.hpp"

namespace olsrsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(Position a, Position b);

/// Two-segment link quality model: full quality up to `d0_m`, linear decay to
/// `p_edge` at `range_m`, nothing beyond.
struct LossModel {
  double range_m = 250.0;
  double p_near = 1.0;
  double p_edge = 0.6;
  double d0_m = 100.0;

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;
};

struct QueueConfig {
  std::size_t capacity = 50;
  double bitrate_bps = 1e6;
};

inline constexpr double kSpeedOfLight = 3e8;

std::vector<Position> place_nodes(std::size_t n, double arena_side, RngStream& rng);

double link_success_probability(Position a, Position b, const LossModel& model);

/// Shared broadcast medium with one drop-tail FIFO transmit queue per node.
/// A frame occupies its sender for size*8/bitrate seconds; afterwards every
/// addressed in-range receiver independently gets it with the link's success
/// probability, after the propagation delay.
class Radio {
 public:
  struct Callbacks {
    std::function<void(NodeId receiver, const Frame& frame, SimTime rx_time)> on_receive;
    std::function<void(NodeId sender, const Frame& frame)> on_queue_drop;
    std::function<void(NodeId sender, const Frame& frame)> on_unicast_lost;
    std::function<void(NodeId sender, const Frame& frame)> on_transmit_start;
  };

  Radio(Simulator& sim, std::vector<Position> positions, LossModel model, QueueConfig queue,
        RngStream loss_rng);

  void set_callbacks(Callbacks callbacks) { callbacks_ = std::move(callbacks); }

  /// Appends to the sender's queue. Returns false (and reports a queue drop)
  /// when the queue is full.
  bool transmit(NodeId sender, Frame frame);

  std::size_t node_count() const { return positions_.size(); }
  std::span<const Position> positions() const { return positions_; }
  double link_probability(NodeId a, NodeId b) const { return prob_[a * positions_.size() + b]; }
  std::span<const NodeId> in_range(NodeId node) const { return neighbors_[node]; }
  double service_time(std::uint32_t size_bytes) const;
  double propagation_delay(NodeId a, NodeId b) const;

  std::size_t queue_length(NodeId node) const { return queues_[node].pending.size(); }
  std::uint64_t queue_drops() const { return queue_drops_; }
  std::uint64_t data_frames_in_flight() const { return data_in_flight_; }
  std::uint64_t frames_transmitted() const { return frames_transmitted_; }

 private:
  struct TxQueue {
    std::deque<Frame> pending;
    bool busy = false;
    std::uint64_t next_seq = 0;
    std::uint64_t last_serviced_seq = 0;
  };

  void start_service(NodeId sender);
  void finish_service(NodeId sender);

  Simulator& sim_;
  std::vector<Position> positions_;
  LossModel model_;
  QueueConfig queue_cfg_;
  RngStream loss_rng_;
  std::vector<double> prob_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<TxQueue> queues_;
  Callbacks callbacks_;
  std::uint64_t queue_drops_ = 0;
  std::uint64_t data_in_flight_ = 0;
  std::uint64_t frames_transmitted_ = 0;
};

}  // namespace olsrsim
