#include "olsrsim/rng.hpp"

namespace olsrsim {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

const char* to_string(StreamRole role) {
  switch (role) {
    case StreamRole::Topology: return "topology";
    case StreamRole::Loss: return "loss";
    case StreamRole::Traffic: return "traffic";
    case StreamRole::Jitter: return "jitter";
  }
  return "?";
}

RngStream::RngStream(std::uint64_t seed, StreamRole role, std::uint64_t substream)
    : seed_(seed), role_(role) {
  const auto role_word = static_cast<std::uint64_t>(role) << 48;
  key_ = splitmix64(splitmix64(seed) ^ splitmix64(role_word ^ substream));
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t c = counter_++;
  return splitmix64(key_ ^ splitmix64(c));
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

}  // namespace olsrsim
