#include "olsrsim/scenario.hpp"

#include <algorithm>
#include <queue>

#include <fmt/format.h>

namespace olsrsim {

ConnectivityReport screen_topology(std::span<const Position> positions, const LossModel& model) {
  const std::size_t n = positions.size();
  constexpr auto kUnset = ~std::uint32_t{0};
  ConnectivityReport r;
  r.component.assign(n, kUnset);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < n; ++s) {
    if (r.component[s] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(sizes.size());
    std::size_t size = 0;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    r.component[s] = label;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      ++size;
      for (std::size_t v = 0; v < n; ++v) {
        if (r.component[v] != kUnset || v == u) continue;
        if (link_success_probability(positions[u], positions[v], model) > 0.0) {
          r.component[v] = label;
          frontier.push(v);
        }
      }
    }
    sizes.push_back(size);
  }
  r.component_count = sizes.size();
  // Largest component; ties resolve to the lowest label.
  r.giant = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (std::size_t v = 0; v < n; ++v) {
    if (r.component[v] == r.giant) r.giant_members.push_back(static_cast<NodeId>(v));
  }
  if (r.giant_members.size() < 2) {
    throw DegenerateTopology(
        fmt::format("largest connected component has {} node(s)", r.giant_members.size()));
  }
  return r;
}

std::vector<std::pair<NodeId, NodeId>> draw_flow_pairs(const ConnectivityReport& report,
                                                       std::size_t count, RngStream& rng,
                                                       std::size_t* redrawn) {
  const std::size_t n = report.component.size();
  const auto& giant = report.giant_members;
  std::size_t fixed = 0;
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto src = static_cast<NodeId>(rng.below(n));
    auto dst = static_cast<NodeId>(rng.below(n - 1));
    if (dst >= src) ++dst;
    if (!report.same_component(src, dst)) {
      ++fixed;
      const auto a = rng.below(giant.size());
      auto b = rng.below(giant.size() - 1);
      if (b >= a) ++b;
      src = giant[a];
      dst = giant[b];
    }
    out.emplace_back(src, dst);
  }
  if (redrawn) *redrawn = fixed;
  return out;
}

Scenario::Scenario(const RunConfig& config, ScenarioLayout layout) : config_(config) {
  if (layout.positions) config_.node_count = layout.positions->size();
  config_.validate();
  RngStream topo(config_.seed, StreamRole::Topology);
  auto positions = layout.positions ? std::move(*layout.positions)
                                    : place_nodes(config_.node_count, config_.arena_side_m, topo);
  connectivity_ = screen_topology(positions, config_.loss);

  radio_ = std::make_unique<Radio>(sim_, std::move(positions), config_.loss, config_.queue,
                                   RngStream(config_.seed, StreamRole::Loss));
  nodes_.reserve(config_.node_count);
  for (std::size_t i = 0; i < config_.node_count; ++i) {
    nodes_.push_back(std::make_unique<OlsrNode>(static_cast<NodeId>(i), config_.node_count,
                                                config_.metric, config_.olsr, sim_, *radio_,
                                                RngStream(config_.seed, StreamRole::Jitter, i)));
  }
  traffic_ = std::make_unique<TrafficEngine>(
      sim_, *radio_,
      [this](NodeId node, NodeId dst) { return nodes_[node]->next_hop(dst); }, stats_);

  Radio::Callbacks cb;
  cb.on_receive = [this](NodeId rx, const Frame& f, SimTime t) {
    if (f.kind == PayloadKind::Data) {
      traffic_->on_arrival(rx, std::get<DataPacket>(*f.payload), t);
    } else {
      nodes_[rx]->receive(f, t);
    }
  };
  cb.on_queue_drop = [this](NodeId, const Frame& f) {
    if (f.kind == PayloadKind::Data) traffic_->on_queue_drop(std::get<DataPacket>(*f.payload));
  };
  cb.on_unicast_lost = [this](NodeId, const Frame& f) {
    if (f.kind == PayloadKind::Data) traffic_->on_link_loss(std::get<DataPacket>(*f.payload));
  };
  cb.on_transmit_start = [this](NodeId sender, const Frame& f) {
    switch (f.kind) {
      case PayloadKind::Hello: ++stats_.hello_tx; break;
      case PayloadKind::Tc: ++stats_.tc_tx; break;
      case PayloadKind::Probe: ++stats_.probe_tx; break;
      case PayloadKind::Data: break;
    }
    if (f.kind != PayloadKind::Data) ++stats_.control_tx;
    if (transmit_observer_) transmit_observer_(sender, f);
  };
  radio_->set_callbacks(std::move(cb));

  RngStream pair_rng(config_.seed, StreamRole::Traffic, 1);
  const auto pairs =
      layout.pairs ? std::move(*layout.pairs)
                   : draw_flow_pairs(connectivity_, config_.flow_pairs, pair_rng, &redrawn_pairs_);
  std::vector<FlowSpec> flows;
  flows.reserve(pairs.size());
  for (const auto& [src, dst] : pairs) {
    flows.push_back(FlowSpec{src, dst, config_.rate_pps, kDataPayloadBytes,
                             SimTime(config_.warmup_s), SimTime(config_.duration_s)});
  }
  RngStream offsets(config_.seed, StreamRole::Traffic, 0);
  traffic_->start_flows(flows, offsets);
}

void Scenario::run_until(SimTime t) {
  if (!started_) {
    started_ = true;
    for (auto& node : nodes_) node->start();
  }
  sim_.run_until(t);
}

RunStats Scenario::finish() {
  stats_.measurement_window_s = config_.duration_s - config_.warmup_s;
  stats_.in_flight_at_end = radio_->data_frames_in_flight();
  stats_.ops = OpCounter{};
  for (const auto& node : nodes_) stats_.ops += node->ops();
  stats_.op_cost_total = stats_.ops.weighted_cost(config_.cost);
  if (!stats_.conserved()) {
    throw InvariantViolation(fmt::format(
        "packet conservation violated: sent={} delivered={} dropped={} in_flight={}",
        stats_.data_sent, stats_.data_delivered, stats_.drops_total(), stats_.in_flight_at_end));
  }
  return stats_;
}

RunStats Scenario::run() {
  run_until(SimTime(config_.duration_s));
  return finish();
}

RunRow run_single(const RunConfig& config) {
  Scenario scenario(config);
  const RunStats stats = scenario.run();
  return finalize(stats, config.seed, config.metric, config.rate_pps);
}

}  // namespace olsrsim
