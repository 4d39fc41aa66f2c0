#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "olsrsim/config.hpp"
#include "olsrsim/olsr_node.hpp"
#include "olsrsim/radio.hpp"
#include "olsrsim/sim_engine.hpp"
#include "olsrsim/stats.hpp"
#include "olsrsim/traffic.hpp"

namespace olsrsim {

class DegenerateTopology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ConnectivityReport {
  /// Component label per node; labels are ordered by smallest member id.
  std::vector<std::uint32_t> component;
  std::size_t component_count = 0;
  std::uint32_t giant = 0;
  std::vector<NodeId> giant_members;

  bool connected() const { return component_count == 1; }
  std::size_t giant_size() const { return giant_members.size(); }
  bool same_component(NodeId a, NodeId b) const { return component[a] == component[b]; }
};

/// Components of the graph whose edges are node pairs with nonzero link
/// probability. Throws DegenerateTopology when no component has two nodes.
ConnectivityReport screen_topology(std::span<const Position> positions, const LossModel& model);

/// Draws `count` source/destination pairs uniformly over all nodes. A pair
/// whose endpoints are disconnected is re-drawn inside the giant component;
/// `redrawn` receives how many pairs that affected.
std::vector<std::pair<NodeId, NodeId>> draw_flow_pairs(const ConnectivityReport& report,
                                                       std::size_t count, RngStream& rng,
                                                       std::size_t* redrawn = nullptr);

/// Fixed placement and/or flow endpoints replacing the random draws.
struct ScenarioLayout {
  std::optional<std::vector<Position>> positions;
  std::optional<std::vector<std::pair<NodeId, NodeId>>> pairs;
};

/// A fully wired simulation: placement, radio, one OLSR agent per node and
/// the CBR flows of one RunConfig.
class Scenario {
 public:
  using FrameObserver = std::function<void(NodeId sender, const Frame& frame)>;

  explicit Scenario(const RunConfig& config, ScenarioLayout layout = {});

  Scenario(const Scenario&) = delete;
  Scenario& operator=(const Scenario&) = delete;

  /// Runs to the configured horizon and returns the checked statistics.
  RunStats run();
  /// Advances to `t` without finalising (for inspection in tests).
  void run_until(SimTime t);
  /// Collects end-of-run counters; throws InvariantViolation if the packet
  /// conservation identity fails.
  RunStats finish();

  void set_transmit_observer(FrameObserver obs) { transmit_observer_ = std::move(obs); }

  const RunConfig& config() const { return config_; }
  Simulator& sim() { return sim_; }
  Radio& radio() { return *radio_; }
  OlsrNode& node(NodeId id) { return *nodes_.at(id); }
  const OlsrNode& node(NodeId id) const { return *nodes_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }
  TrafficEngine& traffic() { return *traffic_; }
  const ConnectivityReport& connectivity() const { return connectivity_; }
  std::size_t redrawn_pairs() const { return redrawn_pairs_; }
  const RunStats& stats() const { return stats_; }

 private:
  RunConfig config_;
  Simulator sim_;
  std::unique_ptr<Radio> radio_;
  std::vector<std::unique_ptr<OlsrNode>> nodes_;
  RunStats stats_;
  std::unique_ptr<TrafficEngine> traffic_;
  ConnectivityReport connectivity_;
  std::size_t redrawn_pairs_ = 0;
  FrameObserver transmit_observer_;
  bool started_ = false;
};

/// Builds, runs and finalises one configuration.
RunRow run_single(const RunConfig& config);

}  // namespace olsrsim
