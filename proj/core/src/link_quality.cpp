#include "olsrsim/link_quality.hpp"

#include <algorithm>

namespace olsrsim {

void ReceptionWindow::prune(SimTime now, double window_s) {
  const double horizon = now.sec() - window_s;
  while (!marks_.empty() && marks_.front().sec() <= horizon) marks_.pop_front();
}

double expected_per_window(double window_s, double hello_interval_s, double elapsed_s) {
  const double span = std::min(window_s, std::max(elapsed_s, 0.0));
  return std::max(1.0, span / hello_interval_s);
}

double delivery_ratio(std::size_t marks, double expected) {
  if (!(expected > 0.0)) return 0.0;
  return std::clamp(static_cast<double>(marks) / expected, 0.0, 1.0);
}

double ewma_update(std::optional<double> prior, double sample, double alpha) {
  if (!prior) return sample;
  return (1.0 - alpha) * *prior + alpha * sample;
}

}  // namespace olsrsim
