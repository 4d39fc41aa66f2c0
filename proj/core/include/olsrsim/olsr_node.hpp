#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "olsrsim/link_quality.hpp"
#include "olsrsim/messages.hpp"
#include "olsrsim/metrics.hpp"
#include "olsrsim/path_compute.hpp"
#include "olsrsim/radio.hpp"
#include "olsrsim/rng.hpp"
#include "olsrsim/sim_engine.hpp"

namespace olsrsim {

enum class FloodingMode : std::uint8_t { Mpr, Full };
enum class TcAdvertise : std::uint8_t { Selectors, AllNeighbors };

struct OlsrParams {
  double hello_interval_s = 2.0;
  double window_s = 20.0;
  double tc_interval_s = 5.0;
  double probe_interval_s = 2.0;
  double owd_alpha = 0.25;
  double neighbor_hold_mult = 3.0;
  double topology_hold_mult = 3.0;
  /// Emission jitter as a fraction of the timer period.
  double jitter_frac = 0.25;
  double route_debounce_s = 1.0;
  double dup_hold_s = 30.0;
  std::uint8_t tc_ttl = 255;
  FloodingMode flooding = FloodingMode::Mpr;
  TcAdvertise tc_advertise = TcAdvertise::Selectors;
  /// Delay probes; unset means "on exactly when routing with MD".
  std::optional<bool> probes;

  double neighbor_hold_s() const { return neighbor_hold_mult * hello_interval_s; }
  double topology_hold_s() const { return topology_hold_mult * tc_interval_s; }
  void validate() const;
};

using RoutingTable = std::map<NodeId, Route>;

/// Topology learned from one originator's most recent TC.
struct TopologyTuple {
  std::uint32_t seq = 0;
  SimTime received;
  std::vector<AdvertisedLink> links;
};

struct NodeControlCounters {
  std::uint64_t hellos_sent = 0;
  std::uint64_t tcs_originated = 0;
  std::uint64_t tcs_relayed = 0;
  std::uint64_t tc_duplicates = 0;
  std::uint64_t probes_sent = 0;
  std::uint64_t route_recomputes = 0;
};

/// OLSR agent of one node: link sensing with HELLO delivery-ratio windows,
/// MPR selection, TC flooding, optional delay probes and metric-driven route
/// computation. All timers run on the shared Simulator; handlers only
/// schedule or enqueue, never call into other handlers.
class OlsrNode {
 public:
  OlsrNode(NodeId id, std::size_t node_count, MetricKind metric, OlsrParams params,
           Simulator& sim, Radio& radio, RngStream jitter);

  OlsrNode(const OlsrNode&) = delete;
  OlsrNode& operator=(const OlsrNode&) = delete;

  void start();
  /// Dispatches a received control frame.
  void receive(const Frame& frame, SimTime rx_time);

  void emit_hello();
  void emit_tc();
  void emit_probe();
  void on_hello(const HelloMessage& msg, SimTime rx_time);
  void on_tc(NodeId prev_hop, const TcMessage& msg);
  void on_probe(const ProbeMessage& msg, SimTime rx_time);

  /// Ages reception windows and expires stale neighbor and topology state.
  void refresh(SimTime now);
  std::set<NodeId> select_mprs();
  LinkGraph build_graph() const;
  const RoutingTable& recompute_routes();

  NodeId id() const { return id_; }
  MetricKind metric() const { return metric_; }
  const RoutingTable& routes() const { return routes_; }
  std::optional<NodeId> next_hop(NodeId dst) const;
  const std::map<NodeId, LinkQualityRecord>& links() const { return links_; }
  const std::map<NodeId, TopologyTuple>& topology() const { return topology_; }
  bool is_symmetric(NodeId neighbor) const;
  std::set<NodeId> symmetric_neighbors() const;
  std::set<NodeId> two_hop_neighbors() const;
  const std::set<NodeId>& mprs() const { return mprs_; }
  std::set<NodeId> mpr_selectors() const;
  const OpCounter& ops() const { return ops_; }
  const NodeControlCounters& counters() const { return counters_; }
  bool probes_enabled() const { return probes_; }
  double hello_expected() const;

 private:
  struct Periodic {
    double phase = 0.0;
    std::uint64_t index = 0;
  };

  void schedule_periodic(Periodic& timer, double interval, EventKind kind, void (OlsrNode::*fn)());
  void request_recompute();
  bool send(NodeId dst, Payload payload, std::uint32_t size);
  bool heard_recently(const LinkQualityRecord& rec, SimTime now) const;

  NodeId id_;
  std::size_t node_count_;
  MetricKind metric_;
  OlsrParams params_;
  bool probes_;
  Simulator& sim_;
  Radio& radio_;
  RngStream jitter_;

  std::map<NodeId, LinkQualityRecord> links_;
  std::map<NodeId, TopologyTuple> topology_;
  std::map<std::pair<NodeId, std::uint32_t>, SimTime> duplicates_;
  std::set<NodeId> mprs_;
  RoutingTable routes_;
  OpCounter ops_;
  NodeControlCounters counters_;

  Periodic hello_timer_;
  Periodic tc_timer_;
  Periodic probe_timer_;
  std::uint32_t hello_seq_ = 0;
  std::uint32_t tc_seq_ = 0;
  std::uint32_t probe_seq_ = 0;
  bool recompute_pending_ = false;
  std::optional<SimTime> last_recompute_;
};

}  // namespace olsrsim
