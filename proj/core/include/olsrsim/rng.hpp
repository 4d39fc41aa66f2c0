#pragma once

#include <cstdint>

namespace olsrsim {

/// Role of a random stream. Each role draws from its own sequence so that,
/// e.g., changing the traffic load never perturbs node placement.
enum class StreamRole : std::uint32_t {
  Topology = 1,
  Loss = 2,
  Traffic = 3,
  Jitter = 4,
};

const char* to_string(StreamRole role);

/// Counter-based generator: draw i of stream (seed, role, substream) is a pure
/// function of those four integers, so sequences are identical on every
/// platform and independent across roles.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamRole role, std::uint64_t substream = 0);

  /// Next value in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next_u64();

  std::uint64_t seed() const { return seed_; }
  StreamRole role() const { return role_; }
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  StreamRole role_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace olsrsim
