#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace olsrsim {

/// Simulated time in seconds. Never negative, never NaN.
class SimTime {
 public:
  constexpr SimTime() = default;
  constexpr explicit SimTime(double seconds) : seconds_(seconds) {}

  static SimTime seconds(double s);
  static SimTime millis(double ms) { return seconds(ms / 1000.0); }

  constexpr double sec() const { return seconds_; }
  constexpr double ms() const { return seconds_ * 1000.0; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;
  friend constexpr SimTime operator+(SimTime a, double dt) { return SimTime(a.seconds_ + dt); }
  friend constexpr double operator-(SimTime a, SimTime b) { return a.seconds_ - b.seconds_; }

 private:
  double seconds_ = 0.0;
};

enum class EventKind : std::uint8_t {
  HelloTimer,
  TcTimer,
  ProbeTimer,
  FrameArrival,
  QueueService,
  FlowTick,
  RouteRecompute,
  StatsSample,
  End,
};

const char* to_string(EventKind kind);

class SchedulingInPast : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunOutcome {
  std::uint64_t events_executed = 0;
  SimTime clock;
};

/// Discrete-event core. Events fire in (fire_at, seq) order where seq is the
/// insertion counter, so simultaneous events run in scheduling order.
class Simulator {
 public:
  using Handler = std::function<void()>;

  SimTime now() const { return now_; }

  /// Throws SchedulingInPast if `at` precedes the current clock.
  std::uint64_t schedule(SimTime at, EventKind kind, Handler handler);
  std::uint64_t schedule_in(double delay_s, EventKind kind, Handler handler) {
    return schedule(now_ + delay_s, kind, std::move(handler));
  }

  /// Executes every event with fire_at <= t_end, then parks the clock at t_end.
  RunOutcome run_until(SimTime t_end);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t executed() const { return executed_; }
  std::uint64_t executed(EventKind kind) const {
    return per_kind_[static_cast<std::size_t>(kind)];
  }

 private:
  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    EventKind kind;
    Handler handler;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t executed_ = 0;
  std::uint64_t per_kind_[static_cast<std::size_t>(EventKind::End) + 1] = {};
};

}  // namespace olsrsim
