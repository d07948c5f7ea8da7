#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icnsim/metrics.hpp"
#include "icnsim/model.hpp"
#include "icnsim/node.hpp"
#include "icnsim/routing.hpp"
#include "icnsim/topology.hpp"

namespace icnsim {

// ---------- run configuration ----------

struct TopologySpec {
  enum class Kind { Line, Core, Edge, RandomGeo, File };
  Kind kind = Kind::RandomGeo;

  std::uint32_t n = 50; // line

  std::uint32_t branching_core = 4; // core
  std::uint32_t branching_leaf = 3;
  std::uint32_t consumers_per_leaf = 1;

  std::uint32_t spokes = 8; // edge
  std::uint32_t spoke_len = 2;
  std::uint32_t consumers_per_spoke = 3;

  RandomGeoParams geo; // random placement

  // Pins the placement seed; when unset each run seed gets its own network.
  std::optional<std::uint64_t> seed;

  std::string path; // file
};

Topology build_topology(const TopologySpec& spec, std::uint64_t run_seed);

struct ScriptedRequest {
  NodeId consumer = 0;
  NodeId prefix = 0;
  std::uint32_t chunk_id = 0;
  double time_ms = 0.0;
};

struct WorkloadSpec {
  enum class Kind { Paper, Scripted };
  Kind kind = Kind::Paper;

  // Who advertises a prefix: every node (the measurement setup where each
  // node both serves and requests content) or only node 0.
  enum class Producers { All, Root };
  Producers producers = Producers::All;

  // Who issues requests: every node with a non-empty FIB, or only degree-1
  // nodes (the consumers of the core/edge shapes).
  enum class Consumers { All, Leaves };
  Consumers consumers = Consumers::All;

  // Requests per (consumer, prefix) pair; each draws its own chunk id.
  std::uint32_t requests_per_pair = 1;

  // Issue times: uniform random in [0, window] unless spacing > 0, in which
  // case request j is issued at exactly j * spacing (no overlap, no draws).
  double window_ms = 10000.0;
  double spacing_ms = 0.0;

  std::vector<ScriptedRequest> requests; // Kind::Scripted
};

struct RunConfig {
  TopologySpec topology;
  WorkloadSpec workload;
  StrategyParams strategy;

  std::uint32_t chunk_count = 50;
  std::uint32_t cache_capacity = 5;
  CsPolicy cs_policy = CsPolicy::Lru;
  // Whether the requesting consumer itself runs the caching decision when
  // the Data packet terminates at it.
  bool cache_at_consumer = false;

  double per_hop_delay_ms = 10.0;
  double jitter_ms = 0.0;
  double loss = 0.0;

  double pit_timeout_ms = 2000.0;
  std::uint32_t retries = 3;

  double max_sim_time_ms = 300000.0;
  double snapshot_period_ms = 10000.0; // 0 = final snapshot only

  std::uint64_t seed = 1;

  bool record_decisions = false;
  // Test hook: pin every node's strategy draw to a constant.
  std::optional<double> forced_draw;
};

// ---------- run output ----------

struct RunCounters {
  std::uint64_t interest_tx = 0;
  std::uint64_t data_tx = 0;
  std::uint64_t lost_packets = 0;
  std::uint64_t aggregations = 0;   // interests absorbed into a live PIT entry
  std::uint64_t unsolicited = 0;    // data with no PIT entry, dropped
  std::uint64_t cache_hits = 0;     // interests satisfied from a content store
  std::uint64_t producer_hits = 0;  // interests satisfied by the producer
  std::uint64_t local_hits = 0;     // satisfied at the consumer itself, 0 hops
  std::uint64_t cache_inserts = 0;
  std::uint64_t evictions = 0;
  std::uint64_t retransmissions = 0;
};

struct RunResult {
  MetricsLog retrievals;               // ordered by request seq
  std::vector<FailureRecord> failures; // ordered by request seq
  std::vector<CacheSnapshot> snapshots;
  std::vector<DecisionRecord> decisions; // when record_decisions is set
  RunCounters counters;
  SimTime end_time_us = 0;
};

// Runs one configuration to quiescence (or the time horizon) and returns
// everything measured.  Fully deterministic: the same config and seed give
// the same result, field for field.
RunResult run(const RunConfig& cfg);

} // namespace icnsim
