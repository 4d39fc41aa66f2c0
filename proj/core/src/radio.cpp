#include "olsrsim/radio.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace olsrsim {

const char* to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::Hello: return "Hello";
    case PayloadKind::Tc: return "Tc";
    case PayloadKind::Probe: return "Probe";
    case PayloadKind::Data: return "Data";
  }
  return "?";
}

Frame make_frame(NodeId src, NodeId dst, Payload payload, std::uint32_t size_bytes) {
  Frame f;
  f.src = src;
  f.dst = dst;
  f.size_bytes = size_bytes;
  f.kind = static_cast<PayloadKind>(payload.index());
  f.payload = std::make_shared<const Payload>(std::move(payload));
  return f;
}

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

void LossModel::validate() const {
  if (!(0.0 <= p_edge && p_edge <= p_near && p_near <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("loss model needs 0 <= p_edge <= p_near <= 1 (p_edge={}, p_near={})", p_edge,
                    p_near));
  }
  if (!(0.0 <= d0_m && d0_m <= range_m)) {
    throw std::invalid_argument(
        fmt::format("loss model needs 0 <= d0_m <= range_m (d0_m={}, range_m={})", d0_m, range_m));
  }
}

std::vector<Position> place_nodes(std::size_t n, double arena_side, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  if (!(arena_side >= 0.0)) throw std::invalid_argument("arena side must be non-negative");
  std::vector<Position> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform() * arena_side;
    const double y = rng.uniform() * arena_side;
    out.push_back({x, y});
  }
  return out;
}

double link_success_probability(Position a, Position b, const LossModel& m) {
  const double d = distance(a, b);
  if (d <= m.d0_m) return m.p_near;
  if (d > m.range_m) return 0.0;
  const double frac = (d - m.d0_m) / (m.range_m - m.d0_m);
  return m.p_near + (m.p_edge - m.p_near) * frac;
}

Radio::Radio(Simulator& sim, std::vector<Position> positions, LossModel model, QueueConfig queue,
             RngStream loss_rng)
    : sim_(sim),
      positions_(std::move(positions)),
      model_(model),
      queue_cfg_(queue),
      loss_rng_(loss_rng) {
  model_.validate();
  if (queue_cfg_.capacity == 0) throw std::invalid_argument("queue capacity must be positive");
  if (!(queue_cfg_.bitrate_bps > 0.0)) throw std::invalid_argument("bitrate must be positive");
  const std::size_t n = positions_.size();
  prob_.assign(n * n, 0.0);
  neighbors_.resize(n);
  queues_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const double p = link_success_probability(positions_[a], positions_[b], model_);
      prob_[a * n + b] = p;
      if (p > 0.0) neighbors_[a].push_back(static_cast<NodeId>(b));
    }
  }
}

double Radio::service_time(std::uint32_t size_bytes) const {
  return static_cast<double>(size_bytes) * 8.0 / queue_cfg_.bitrate_bps;
}

double Radio::propagation_delay(NodeId a, NodeId b) const {
  return distance(positions_[a], positions_[b]) / kSpeedOfLight;
}

bool Radio::transmit(NodeId sender, Frame frame) {
  TxQueue& q = queues_[sender];
  frame.src = sender;
  frame.enqueue_time = sim_.now();
  if (q.pending.size() >= queue_cfg_.capacity) {
    ++queue_drops_;
    if (callbacks_.on_queue_drop) callbacks_.on_queue_drop(sender, frame);
    return false;
  }
  frame.queue_seq = ++q.next_seq;
  if (frame.kind == PayloadKind::Data) ++data_in_flight_;
  q.pending.push_back(std::move(frame));
  if (!q.busy) start_service(sender);
  return true;
}

void Radio::start_service(NodeId sender) {
  TxQueue& q = queues_[sender];
  assert(!q.pending.empty());
  q.busy = true;
  const Frame& head = q.pending.front();
  if (head.queue_seq <= q.last_serviced_seq) {
    throw std::logic_error("transmit queue serviced out of FIFO order");
  }
  q.last_serviced_seq = head.queue_seq;
  ++frames_transmitted_;
  if (callbacks_.on_transmit_start) callbacks_.on_transmit_start(sender, head);
  sim_.schedule_in(service_time(head.size_bytes), EventKind::QueueService,
                   [this, sender] { finish_service(sender); });
}

void Radio::finish_service(NodeId sender) {
  TxQueue& q = queues_[sender];
  Frame frame = std::move(q.pending.front());
  q.pending.pop_front();
  q.busy = false;

  auto deliver = [this, sender](NodeId rx, const Frame& f) {
    const SimTime arrival = sim_.now() + propagation_delay(sender, rx);
    sim_.schedule(arrival, EventKind::FrameArrival, [this, rx, f] {
      if (f.kind == PayloadKind::Data) --data_in_flight_;
      if (callbacks_.on_receive) callbacks_.on_receive(rx, f, sim_.now());
    });
  };

  if (frame.is_broadcast()) {
    for (NodeId rx : neighbors_[sender]) {
      if (loss_rng_.bernoulli(link_probability(sender, rx))) deliver(rx, frame);
    }
  } else {
    const NodeId rx = frame.dst;
    const double p = rx < positions_.size() ? link_probability(sender, rx) : 0.0;
    if (p > 0.0 && loss_rng_.bernoulli(p)) {
      deliver(rx, frame);
    } else {
      if (frame.kind == PayloadKind::Data) --data_in_flight_;
      if (callbacks_.on_unicast_lost) callbacks_.on_unicast_lost(sender, frame);
    }
  }

  if (!q.pending.empty()) start_service(sender);
}

}  // namespace olsrsim
