#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "olsrsim/messages.hpp"
#include "olsrsim/sim_engine.hpp"

namespace olsrsim {

/// Reception times of a neighbor's HELLOs over the trailing window.
class ReceptionWindow {
 public:
  void mark(SimTime t) { marks_.push_back(t); }
  /// Forgets receptions at or before `now - window_s`.
  void prune(SimTime now, double window_s);
  std::size_t count() const { return marks_.size(); }
  bool empty() const { return marks_.empty(); }

 private:
  std::deque<SimTime> marks_;
};

/// HELLOs a neighbor should have delivered in the window. Before a full
/// window has elapsed the count is pro-rated by the elapsed time (floored at
/// one HELLO).
double expected_per_window(double window_s, double hello_interval_s, double elapsed_s);

/// marks / expected, clamped to [0, 1].
double delivery_ratio(std::size_t marks, double expected);

/// Exponentially weighted delay estimate; the first sample initialises it.
double ewma_update(std::optional<double> prior, double sample, double alpha);

struct LinkQualityRecord {
  NodeId neighbor = 0;
  ReceptionWindow rx_window;
  double d_r = 0.0;
  double d_f = 0.0;
  std::optional<double> owd_ms;
  SimTime last_heard;
  bool heard = false;
  /// Symmetric neighbors the neighbor reported in its last HELLO.
  std::vector<NodeId> reported_symmetric;
  bool selected_us_as_mpr = false;

  double q() const { return d_f * d_r; }
};

}  // namespace olsrsim
