#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

namespace olsrsim {

enum class MetricKind : std::uint8_t { Hop, Etx, InvEtx, Ml, Md };

std::string_view to_string(MetricKind kind);
/// Accepts HOP, ETX, INVETX, ML, MD (case-insensitive).
std::optional<MetricKind> parse_metric(std::string_view text);

/// Relative price of arithmetic operations. Only the ordering
/// div > mult > add matters for the overhead comparison.
struct CostModel {
  double add = 1.0;
  double mult = 3.0;
  double div = 8.0;
};

struct OpCounter {
  std::uint64_t adds = 0;
  std::uint64_t mults = 0;
  std::uint64_t divs = 0;
  std::uint64_t compares = 0;

  double weighted_cost(const CostModel& cost = {}) const {
    return cost.add * static_cast<double>(adds) + cost.mult * static_cast<double>(mults) +
           cost.div * static_cast<double>(divs);
  }
  OpCounter& operator+=(const OpCounter& o) {
    adds += o.adds;
    mults += o.mults;
    divs += o.divs;
    compares += o.compares;
    return *this;
  }
  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// What a metric needs to know about one directed link.
struct LinkSample {
  double d_f = 0.0;
  double d_r = 0.0;
  std::optional<double> owd_ms;

  double q() const { return d_f * d_r; }
};

/// A link is usable for routing only when its delivery probability is
/// positive; MD additionally needs a delay measurement.
bool admissible(MetricKind kind, const LinkSample& link);

class ExcludedLink : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PathWeight {
  double value = 0.0;
  std::uint32_t hops = 0;

  friend bool operator==(const PathWeight&, const PathWeight&) = default;
};

/// Weight of the empty path: 1 for ML (product), 0 otherwise.
PathWeight identity(MetricKind kind);

/// HOP -> 1, ETX -> 1/(d_f d_r), INVETX and ML -> d_f d_r, MD -> owd_ms.
/// Throws ExcludedLink for links that fail admissible().
double link_weight(MetricKind kind, const LinkSample& link, OpCounter& ctr);

/// Extends a path by one link: product for ML, sum otherwise.
PathWeight combine(MetricKind kind, PathWeight path, double link, OpCounter& ctr);

/// Strict preference of `a` over `b`.
///  ETX, MD, HOP: smaller value, then fewer hops.
///  ML: larger value, then fewer hops.
///  INVETX: fewer hops, then larger value.
bool better(MetricKind kind, const PathWeight& a, const PathWeight& b, OpCounter& ctr);

/// Folds an explicit path: the first link seeds the weight and each further
/// link is combined in, so an n-link path costs n-1 combines.
PathWeight evaluate_path(MetricKind kind, std::span<const LinkSample> links, OpCounter& ctr);

/// Closed-form operation profile of evaluate_path over an n-link path.
OpCounter route_cost_profile(MetricKind kind, std::uint32_t n_links);

}  // namespace olsrsim
