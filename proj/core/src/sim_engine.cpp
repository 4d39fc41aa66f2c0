#include "olsrsim/sim_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include <fmt/format.h>

namespace olsrsim {

SimTime SimTime::seconds(double s) {
  if (std::isnan(s) || s < 0.0) {
    throw std::invalid_argument(fmt::format("invalid simulated time {}", s));
  }
  return SimTime(s);
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::HelloTimer: return "HelloTimer";
    case EventKind::TcTimer: return "TcTimer";
    case EventKind::ProbeTimer: return "ProbeTimer";
    case EventKind::FrameArrival: return "FrameArrival";
    case EventKind::QueueService: return "QueueService";
    case EventKind::FlowTick: return "FlowTick";
    case EventKind::RouteRecompute: return "RouteRecompute";
    case EventKind::StatsSample: return "StatsSample";
    case EventKind::End: return "End";
  }
  return "?";
}

std::uint64_t Simulator::schedule(SimTime at, EventKind kind, Handler handler) {
  if (std::isnan(at.sec()) || at < now_) {
    throw SchedulingInPast(fmt::format("{} event at t={:.9f} scheduled while clock is {:.9f}",
                                       to_string(kind), at.sec(), now_.sec()));
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push_back(Entry{at, seq, kind, std::move(handler)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

RunOutcome Simulator::run_until(SimTime t_end) {
  const std::uint64_t before = executed_;
  while (!heap_.empty() && heap_.front().fire_at <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry entry = std::move(heap_.back());
    heap_.pop_back();
    if (entry.fire_at < now_) {
      throw std::logic_error("event queue produced a timestamp earlier than the clock");
    }
    now_ = entry.fire_at;
    ++executed_;
    ++per_kind_[static_cast<std::size_t>(entry.kind)];
    entry.handler();
  }
  if (now_ < t_end) now_ = t_end;
  return RunOutcome{executed_ - before, now_};
}

}  // namespace olsrsim
