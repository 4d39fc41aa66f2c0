#include "olsrsim/olsr_node.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "olsrsim/mpr.hpp"

namespace olsrsim {

void OlsrParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(fmt::format("olsr.{} must be positive", name));
  };
  positive(hello_interval_s, "hello_interval_s");
  positive(window_s, "window_s");
  positive(tc_interval_s, "tc_interval_s");
  positive(probe_interval_s, "probe_interval_s");
  positive(neighbor_hold_mult, "neighbor_hold_mult");
  positive(topology_hold_mult, "topology_hold_mult");
  positive(dup_hold_s, "dup_hold_s");
  if (!(owd_alpha > 0.0 && owd_alpha <= 1.0)) {
    throw std::invalid_argument("olsr.owd_alpha must be in (0, 1]");
  }
  if (!(jitter_frac >= 0.0 && jitter_frac < 1.0)) {
    throw std::invalid_argument("olsr.jitter_frac must be in [0, 1)");
  }
  if (!(route_debounce_s >= 0.0)) throw std::invalid_argument("olsr.route_debounce_s must be >= 0");
  if (tc_ttl == 0) throw std::invalid_argument("olsr.tc_ttl must be positive");
}

OlsrNode::OlsrNode(NodeId id, std::size_t node_count, MetricKind metric, OlsrParams params,
                   Simulator& sim, Radio& radio, RngStream jitter)
    : id_(id),
      node_count_(node_count),
      metric_(metric),
      params_(params),
      probes_(params.probes.value_or(metric == MetricKind::Md)),
      sim_(sim),
      radio_(radio),
      jitter_(jitter) {
  params_.validate();
}

void OlsrNode::start() {
  hello_timer_.phase = sim_.now().sec() + jitter_.uniform() * params_.hello_interval_s;
  tc_timer_.phase = sim_.now().sec() + jitter_.uniform() * params_.tc_interval_s;
  probe_timer_.phase = sim_.now().sec() + jitter_.uniform() * params_.probe_interval_s;
  schedule_periodic(hello_timer_, params_.hello_interval_s, EventKind::HelloTimer,
                    &OlsrNode::emit_hello);
  schedule_periodic(tc_timer_, params_.tc_interval_s, EventKind::TcTimer, &OlsrNode::emit_tc);
  if (probes_) {
    schedule_periodic(probe_timer_, params_.probe_interval_s, EventKind::ProbeTimer,
                      &OlsrNode::emit_probe);
  }
}

void OlsrNode::schedule_periodic(Periodic& timer, double interval, EventKind kind,
                                 void (OlsrNode::*fn)()) {
  const double jitter = jitter_.uniform() * params_.jitter_frac * interval;
  const double at = timer.phase + static_cast<double>(timer.index) * interval + jitter;
  ++timer.index;
  sim_.schedule(SimTime(std::max(at, sim_.now().sec())), kind, [this, fn] { (this->*fn)(); });
}

bool OlsrNode::send(NodeId dst, Payload payload, std::uint32_t size) {
  return radio_.transmit(id_, make_frame(id_, dst, std::move(payload), size));
}

double OlsrNode::hello_expected() const {
  return expected_per_window(params_.window_s, params_.hello_interval_s, sim_.now().sec());
}

bool OlsrNode::heard_recently(const LinkQualityRecord& rec, SimTime now) const {
  return rec.heard && (now - rec.last_heard) <= params_.neighbor_hold_s();
}

bool OlsrNode::is_symmetric(NodeId neighbor) const {
  auto it = links_.find(neighbor);
  if (it == links_.end()) return false;
  const auto& rec = it->second;
  return heard_recently(rec, sim_.now()) && rec.d_f > 0.0 && rec.d_r > 0.0;
}

std::set<NodeId> OlsrNode::symmetric_neighbors() const {
  std::set<NodeId> out;
  for (const auto& [n, _] : links_) {
    if (is_symmetric(n)) out.insert(n);
  }
  return out;
}

std::set<NodeId> OlsrNode::two_hop_neighbors() const {
  const auto sym = symmetric_neighbors();
  std::set<NodeId> out;
  for (NodeId n : sym) {
    for (NodeId t : links_.at(n).reported_symmetric) {
      if (t != id_ && !sym.contains(t)) out.insert(t);
    }
  }
  return out;
}

std::set<NodeId> OlsrNode::mpr_selectors() const {
  std::set<NodeId> out;
  for (const auto& [n, rec] : links_) {
    if (rec.selected_us_as_mpr && is_symmetric(n)) out.insert(n);
  }
  return out;
}

std::optional<NodeId> OlsrNode::next_hop(NodeId dst) const {
  auto it = routes_.find(dst);
  if (it == routes_.end()) return std::nullopt;
  return it->second.next_hop;
}

void OlsrNode::refresh(SimTime now) {
  bool changed = false;
  const double expected = hello_expected();
  for (auto it = links_.begin(); it != links_.end();) {
    auto& rec = it->second;
    rec.rx_window.prune(now, params_.window_s);
    if (rec.rx_window.empty()) {
      // Nothing heard for a whole window: the link is lost for every metric.
      it = links_.erase(it);
      changed = true;
      continue;
    }
    const double d_r = delivery_ratio(rec.rx_window.count(), expected);
    if (d_r != rec.d_r) {
      rec.d_r = d_r;
      changed = true;
    }
    ++it;
  }
  for (auto it = topology_.begin(); it != topology_.end();) {
    if (now - it->second.received > params_.topology_hold_s()) {
      it = topology_.erase(it);
      changed = true;
    } else {
      ++it;
    }
  }
  std::erase_if(duplicates_, [now](const auto& kv) { return kv.second < now; });
  if (changed) request_recompute();
}

std::set<NodeId> OlsrNode::select_mprs() {
  const auto sym = symmetric_neighbors();
  std::vector<MprCandidate> candidates;
  candidates.reserve(sym.size());
  for (NodeId n : sym) {
    const auto& rec = links_.at(n);
    MprCandidate c{n, rec.q(), {}};
    for (NodeId t : rec.reported_symmetric) {
      if (t != id_ && !sym.contains(t)) c.covers.push_back(t);
    }
    candidates.push_back(std::move(c));
  }
  mprs_ = olsrsim::select_mprs(candidates);
  return mprs_;
}

void OlsrNode::emit_hello() {
  const SimTime now = sim_.now();
  refresh(now);
  select_mprs();

  const double full_window = params_.window_s / params_.hello_interval_s;
  const auto cap = static_cast<std::uint32_t>(std::llround(full_window)) + 1;
  HelloMessage msg{id_, ++hello_seq_, {}};
  for (const auto& [n, rec] : links_) {
    NeighborStatus status = NeighborStatus::Heard;
    if (mprs_.contains(n)) {
      status = NeighborStatus::Mpr;
    } else if (is_symmetric(n)) {
      status = NeighborStatus::Symmetric;
    }
    const auto count = static_cast<std::uint32_t>(rec.rx_window.count());
    msg.neighbor_reports.push_back({n, std::min(count, cap), status});
  }
  send(kBroadcast, std::move(msg), kControlFrameBytes);
  ++counters_.hellos_sent;
  schedule_periodic(hello_timer_, params_.hello_interval_s, EventKind::HelloTimer,
                    &OlsrNode::emit_hello);
}

void OlsrNode::on_hello(const HelloMessage& msg, SimTime rx_time) {
  if (msg.originator == id_) return;
  auto& rec = links_[msg.originator];
  rec.neighbor = msg.originator;
  rec.rx_window.prune(rx_time, params_.window_s);
  rec.rx_window.mark(rx_time);
  rec.last_heard = rx_time;
  rec.heard = true;
  const double expected = hello_expected();
  rec.d_r = delivery_ratio(rec.rx_window.count(), expected);

  rec.d_f = 0.0;
  rec.selected_us_as_mpr = false;
  rec.reported_symmetric.clear();
  for (const auto& report : msg.neighbor_reports) {
    if (report.neighbor == id_) {
      rec.d_f = delivery_ratio(report.hellos_received, expected);
      rec.selected_us_as_mpr = report.status == NeighborStatus::Mpr;
    } else if (report.status != NeighborStatus::Heard) {
      rec.reported_symmetric.push_back(report.neighbor);
    }
  }
  request_recompute();
}

void OlsrNode::emit_tc() {
  const SimTime now = sim_.now();
  std::set<NodeId> advertised = params_.tc_advertise == TcAdvertise::Selectors
                                    ? mpr_selectors()
                                    : symmetric_neighbors();
  if (!advertised.empty()) {
    TcMessage msg{id_, ++tc_seq_, params_.tc_ttl, {}};
    for (NodeId n : advertised) {
      const auto& rec = links_.at(n);
      msg.advertised.push_back({n, rec.d_f, rec.d_r, rec.owd_ms});
    }
    duplicates_[{id_, msg.seq}] = now + params_.dup_hold_s;
    send(kBroadcast, std::move(msg), kControlFrameBytes);
    ++counters_.tcs_originated;
  }
  schedule_periodic(tc_timer_, params_.tc_interval_s, EventKind::TcTimer, &OlsrNode::emit_tc);
}

void OlsrNode::on_tc(NodeId prev_hop, const TcMessage& msg) {
  if (msg.originator == id_) return;
  if (!is_symmetric(prev_hop)) return;
  const SimTime now = sim_.now();
  const auto key = std::make_pair(msg.originator, msg.seq);
  if (duplicates_.contains(key)) {
    ++counters_.tc_duplicates;
    return;
  }
  duplicates_.emplace(key, now + params_.dup_hold_s);

  auto it = topology_.find(msg.originator);
  if (it == topology_.end() || msg.seq > it->second.seq) {
    topology_[msg.originator] = TopologyTuple{msg.seq, now, msg.advertised};
    request_recompute();
  }

  const bool relay = params_.flooding == FloodingMode::Full || mpr_selectors().contains(prev_hop);
  if (relay && msg.ttl > 1) {
    TcMessage copy = msg;
    copy.ttl = static_cast<std::uint8_t>(msg.ttl - 1);
    send(kBroadcast, std::move(copy), kControlFrameBytes);
    ++counters_.tcs_relayed;
  }
}

void OlsrNode::emit_probe() {
  send(kBroadcast, ProbeMessage{id_, ++probe_seq_, sim_.now()}, kControlFrameBytes);
  ++counters_.probes_sent;
  schedule_periodic(probe_timer_, params_.probe_interval_s, EventKind::ProbeTimer,
                    &OlsrNode::emit_probe);
}

void OlsrNode::on_probe(const ProbeMessage& msg, SimTime rx_time) {
  if (msg.originator == id_) return;
  if (msg.sent_at > rx_time) throw std::logic_error("probe received before it was sent");
  auto& rec = links_[msg.originator];
  rec.neighbor = msg.originator;
  const double sample_ms = (rx_time - msg.sent_at) * 1000.0;
  rec.owd_ms = ewma_update(rec.owd_ms, sample_ms, params_.owd_alpha);
  request_recompute();
}

void OlsrNode::receive(const Frame& frame, SimTime rx_time) {
  const Payload& p = *frame.payload;
  if (const auto* hello = std::get_if<HelloMessage>(&p)) {
    on_hello(*hello, rx_time);
  } else if (const auto* tc = std::get_if<TcMessage>(&p)) {
    on_tc(frame.src, *tc);
  } else if (const auto* probe = std::get_if<ProbeMessage>(&p)) {
    on_probe(*probe, rx_time);
  }
}

LinkGraph OlsrNode::build_graph() const {
  const SimTime now = sim_.now();
  LinkGraph g(node_count_, metric_);
  for (const auto& [n, rec] : links_) {
    if (is_symmetric(n)) g.add_edge(id_, n, LinkSample{rec.d_f, rec.d_r, rec.owd_ms});
  }
  auto fresh = [&](const TopologyTuple& t) { return now - t.received <= params_.topology_hold_s(); };
  for (const auto& [u, tuple] : topology_) {
    if (u == id_ || !fresh(tuple)) continue;
    for (const auto& adv : tuple.links) {
      if (adv.neighbor == u) continue;
      g.add_edge(u, adv.neighbor, LinkSample{adv.d_f, adv.d_r, adv.owd_ms});
    }
  }
  // A link advertised by only one endpoint is usable in both directions.
  for (const auto& [u, tuple] : topology_) {
    if (u == id_ || !fresh(tuple)) continue;
    for (const auto& adv : tuple.links) {
      const NodeId v = adv.neighbor;
      if (v == u || v == id_ || g.has_edge(v, u)) continue;
      g.add_edge(v, u, LinkSample{adv.d_r, adv.d_f, adv.owd_ms});
    }
  }
  return g;
}

const RoutingTable& OlsrNode::recompute_routes() {
  recompute_pending_ = false;
  last_recompute_ = sim_.now();
  OpCounter ctr;
  routes_ = compute_paths(metric_, build_graph(), id_, ctr);
  ops_ += ctr;
  ++counters_.route_recomputes;
  return routes_;
}

void OlsrNode::request_recompute() {
  if (recompute_pending_) return;
  recompute_pending_ = true;
  SimTime at = sim_.now();
  if (last_recompute_) at = std::max(at, *last_recompute_ + params_.route_debounce_s);
  sim_.schedule(at, EventKind::RouteRecompute, [this] { recompute_routes(); });
}

}  // namespace olsrsim
