#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "icnsim/errors.hpp"

namespace icnsim {

using NodeId = std::uint32_t;

// Simulated time in integer microseconds.  Integer time keeps event ordering
// and latency arithmetic exact: a retrieval that crosses h hops at a fixed
// per-hop delay measures exactly h * delay, with no float rounding in sight.
using SimTime = std::int64_t;

constexpr double kUsPerMs = 1000.0;

inline SimTime ms_to_us(double ms) {
  return static_cast<SimTime>(ms * kUsPerMs + (ms >= 0 ? 0.5 : -0.5));
}

inline double us_to_ms(SimTime us) { return static_cast<double>(us) / kUsPerMs; }

// A content name: the producer's prefix plus a chunk id within it.
// Every node owns the prefix equal to its own node id.
struct ChunkName {
  NodeId prefix = 0;
  std::uint32_t chunk_id = 0;

  bool operator==(const ChunkName&) const = default;
  auto operator<=>(const ChunkName&) const = default;

  std::uint64_t packed() const {
    return (static_cast<std::uint64_t>(prefix) << 32) | chunk_id;
  }
};

struct ChunkNameHash {
  std::size_t operator()(const ChunkName& n) const {
    // splitmix-style scramble of the packed name
    std::uint64_t x = n.packed() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

// Builds a name and rejects chunk ids outside the content universe.
inline ChunkName make_chunk_name(NodeId prefix, std::uint32_t chunk_id,
                                 std::uint32_t chunk_count) {
  if (chunk_id >= chunk_count)
    throw InvalidChunkId("chunk id " + std::to_string(chunk_id) +
                         " out of range (chunk count " +
                         std::to_string(chunk_count) + ")");
  return ChunkName{prefix, chunk_id};
}

// Interest packet.  tsi ("time since inception", counted in hops) starts at
// 1 when the consumer creates the packet and is stepped by strategies that
// care about it (the ProbCache family) once per non-satisfying forwarder.
struct Interest {
  ChunkName name;
  std::uint32_t tsi = 1;
  NodeId origin = 0;
  std::uint64_t seq = 0; // request id, engine-wide

  bool operator==(const Interest&) const = default;
};

// Data packet.  tsb ("time since birth", in hops) is seeded to 1 at the
// satisfying node; tsi is copied from the Interest at that moment.  interval
// belongs to the Intervals strategy.  Fields a strategy does not use are
// carried unchanged and ignored.  Payload bytes are not modeled at all:
// nothing in the measured quantities depends on them.
struct Data {
  ChunkName name;
  std::uint32_t tsb = 1;
  std::uint32_t tsi = 1;
  std::uint32_t interval = 0;
  NodeId hit_node = 0; // where this copy was satisfied

  bool operator==(const Data&) const = default;
};

// ---------- strategy identification ----------

enum class StrategyKind {
  NoCache, // forwarding only, the baseline
  CEE,     // cache everything everywhere
  LCD,     // leave copy down
  MCD,     // move copy down
  Prob,        // fixed-probability coin flip, parameter p
  ProbCache,   // weight tsb/tsi, caches toward the consumer
  ProbCacheInv,// complement weight, caches toward the producer
  Labels,      // cache iff chunk_id mod k == node label, parameter k
  Intervals,   // cache every (i+1)-th hop along the return path, parameter i
};

struct StrategyParams {
  StrategyKind kind = StrategyKind::NoCache;
  double p = 0.5;        // Prob
  std::uint32_t k = 4;   // Labels
  std::uint32_t i = 2;   // Intervals
};

// Canonical label, also the spelling accepted by parse_strategy and used in
// CSV output: NoCache, CEE, LCD, MCD, Prob(0.5), ProbCache, ProbCacheInv,
// Labels(4), Intervals(2).
std::string strategy_label(const StrategyParams& s);

// Parses the canonical spelling.  Throws SpecError on anything else.
StrategyParams parse_strategy(const std::string& text);

} // namespace icnsim
