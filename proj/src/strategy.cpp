#include "icnsim/strategy.hpp"

#include <algorithm>

namespace icnsim {

Data strategy_make_data(const StrategyParams& s, const Interest& interest,
                        NodeId hit_node) {
  Data d;
  d.name = interest.name;
  d.tsb = 1;
  d.tsi = interest.tsi;
  d.interval = s.kind == StrategyKind::Intervals ? s.i : 0;
  d.hit_node = hit_node;
  return d;
}

void strategy_on_forward(const StrategyParams& s, Interest& interest) {
  if (s.kind == StrategyKind::ProbCache || s.kind == StrategyKind::ProbCacheInv)
    interest.tsi += 1;
}

bool strategy_deletes_at_hit(const StrategyParams& s) {
  return s.kind == StrategyKind::MCD;
}

namespace {

double probcache_weight(const Data& d) {
  if (d.tsi == 0)
    throw MalformedPacket("ProbCache data packet with tsi = 0");
  double w = static_cast<double>(d.tsb) / static_cast<double>(d.tsi);
  return std::clamp(w, 0.0, 1.0);
}

} // namespace

CacheDecision strategy_handle_data(const StrategyParams& s, Data& data,
                                   std::uint32_t node_label, RngStream& rng) {
  switch (s.kind) {
    case StrategyKind::NoCache:
      return {false, -1.0};

    case StrategyKind::CEE:
      return {true, -1.0};

    case StrategyKind::LCD:
    case StrategyKind::MCD: {
      // cache only right below the hit: test before stepping
      bool cache = data.tsb == 1;
      data.tsb += 1;
      return {cache, -1.0};
    }

    case StrategyKind::Prob:
      return {rng.next_unit() < s.p, s.p};

    case StrategyKind::ProbCache: {
      data.tsb += 1; // step first, then weigh
      double w = probcache_weight(data);
      return {rng.next_unit() < w, w};
    }

    case StrategyKind::ProbCacheInv: {
      data.tsb += 1;
      double w = 1.0 - probcache_weight(data);
      return {rng.next_unit() < w, w};
    }

    case StrategyKind::Labels:
      return {data.name.chunk_id % s.k == node_label, -1.0};

    case StrategyKind::Intervals: {
      if (data.interval == 0) {
        data.interval = s.i;
        return {true, -1.0};
      }
      data.interval -= 1;
      return {false, -1.0};
    }
  }
  return {false, -1.0};
}

std::uint32_t node_label_for(const StrategyParams& s, NodeId id) {
  if (s.kind == StrategyKind::Labels) return id % s.k;
  return 0;
}

} // namespace icnsim
