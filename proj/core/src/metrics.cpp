#include "olsrsim/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

namespace olsrsim {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Hop: return "HOP";
    case MetricKind::Etx: return "ETX";
    case MetricKind::InvEtx: return "INVETX";
    case MetricKind::Ml: return "ML";
    case MetricKind::Md: return "MD";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (MetricKind k : {MetricKind::Hop, MetricKind::Etx, MetricKind::InvEtx, MetricKind::Ml,
                       MetricKind::Md}) {
    if (upper == to_string(k)) return k;
  }
  return std::nullopt;
}

bool admissible(MetricKind kind, const LinkSample& link) {
  if (!(link.q() > 0.0)) return false;
  if (kind == MetricKind::Md && !link.owd_ms) return false;
  return true;
}

PathWeight identity(MetricKind kind) {
  return kind == MetricKind::Ml ? PathWeight{1.0, 0} : PathWeight{0.0, 0};
}

double link_weight(MetricKind kind, const LinkSample& link, OpCounter& ctr) {
  if (!admissible(kind, link)) {
    throw ExcludedLink(fmt::format("{} link with d_f={} d_r={} is not routable",
                                   to_string(kind), link.d_f, link.d_r));
  }
  switch (kind) {
    case MetricKind::Hop:
      return 1.0;
    case MetricKind::Etx:
      ctr.mults += 1;
      ctr.divs += 1;
      return 1.0 / (link.d_f * link.d_r);
    case MetricKind::InvEtx:
    case MetricKind::Ml:
      ctr.mults += 1;
      return link.d_f * link.d_r;
    case MetricKind::Md:
      return *link.owd_ms;
  }
  return 0.0;
}

PathWeight combine(MetricKind kind, PathWeight path, double link, OpCounter& ctr) {
  if (kind == MetricKind::Ml) {
    ctr.mults += 1;
    return {path.value * link, path.hops + 1};
  }
  ctr.adds += 1;
  return {path.value + link, path.hops + 1};
}

bool better(MetricKind kind, const PathWeight& a, const PathWeight& b, OpCounter& ctr) {
  ctr.compares += 1;
  switch (kind) {
    case MetricKind::Hop:
    case MetricKind::Etx:
    case MetricKind::Md:
      if (a.value != b.value) return a.value < b.value;
      return a.hops < b.hops;
    case MetricKind::Ml:
      if (a.value != b.value) return a.value > b.value;
      return a.hops < b.hops;
    case MetricKind::InvEtx:
      if (a.hops != b.hops) return a.hops < b.hops;
      return a.value > b.value;
  }
  return false;
}

PathWeight evaluate_path(MetricKind kind, std::span<const LinkSample> links, OpCounter& ctr) {
  if (links.empty()) return identity(kind);
  PathWeight w{link_weight(kind, links.front(), ctr), 1};
  for (const LinkSample& l : links.subspan(1)) {
    w = combine(kind, w, link_weight(kind, l, ctr), ctr);
  }
  return w;
}

OpCounter route_cost_profile(MetricKind kind, std::uint32_t n_links) {
  if (n_links == 0) throw std::invalid_argument("a route has at least one link");
  const std::uint64_t n = n_links;
  OpCounter c;
  switch (kind) {
    case MetricKind::Etx:
      c.mults = n;
      c.divs = n;
      c.adds = n - 1;
      break;
    case MetricKind::InvEtx:
      c.mults = n;
      c.adds = n - 1;
      break;
    case MetricKind::Ml:
      c.mults = n + (n - 1);
      break;
    case MetricKind::Hop:
    case MetricKind::Md:
      c.adds = n - 1;
      break;
  }
  return c;
}

}  // namespace olsrsim
