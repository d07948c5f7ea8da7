#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icnsim/model.hpp"

namespace icnsim {

// One satisfied retrieval.  Times in integer microseconds; CSV output
// converts to milliseconds.  distance is the consumer's rank-tree distance
// to the producer at issue time; hops_to_hit is how far the answer actually
// came from, counted along the Data packet's return path.
struct RetrievalRecord {
  std::uint64_t seq = 0;
  NodeId consumer = 0;
  NodeId prefix = 0;
  std::uint32_t chunk_id = 0;
  std::uint32_t distance = 0;
  std::uint32_t hops_to_hit = 0;
  NodeId hit_node = 0;
  SimTime issue_us = 0;
  SimTime satisfy_us = 0;
  SimTime latency_us = 0;
  std::uint32_t retries = 0;
};

// A request that ran out of retries or was still open at the horizon.
struct FailureRecord {
  std::uint64_t seq = 0;
  NodeId consumer = 0;
  NodeId prefix = 0;
  std::uint32_t chunk_id = 0;
  std::uint32_t distance = 0;
  std::uint32_t retries = 0;
};

// Cache contents of every node at one instant, most recent first per node.
struct CacheSnapshot {
  SimTime time_us = 0;
  std::vector<std::vector<ChunkName>> contents; // indexed by node id
};

// One caching decision on a Data return path (recorded when tracing is on).
struct DecisionRecord {
  NodeId node = 0;
  ChunkName name;
  bool cached = false;
  double prob = -1.0; // probability compared against; -1 = deterministic rule
};

using MetricsLog = std::vector<RetrievalRecord>;

// ---------- aggregation ----------

// Sums kept alongside counts so per-seed aggregates can be merged exactly
// and means derived at the end.
struct DistanceAccum {
  std::size_t n = 0;
  std::size_t failures = 0;
  double sum_hops = 0.0;
  double sum_hop_reduction = 0.0;
  double sum_latency_ms = 0.0;
};

struct DistanceStats {
  std::uint32_t distance = 0;
  std::size_t n = 0;
  std::size_t failures = 0;
  double mean_hops = 0.0;
  double mean_hop_reduction = 0.0;
  double mean_latency_ms = 0.0;
  double mean_latency_reduction_ms = 0.0;
  bool low_confidence = false; // fewer samples than the reporting floor
};

struct Summary {
  std::size_t n = 0;
  std::size_t failures = 0;
  double mean_hops = 0.0;
  double mean_latency_ms = 0.0;
  double mean_latency_reduction_ms = 0.0;
};

constexpr std::size_t kDefaultMinSamples = 5;

// Latency a retrieval would see with no caching at all: one fixed delay per
// hop of the consumer's distance, jitter excluded.
double baseline_latency_ms(std::uint32_t distance, double per_hop_delay_ms);

// Failures are excluded from hop/latency means and surfaced as counts.
// Throws EmptyLog when there are no records and no failures.
std::map<std::uint32_t, DistanceAccum> accumulate_by_distance(
    const MetricsLog& log, const std::vector<FailureRecord>& failures);

// Exact merge of per-seed accumulators (sum of sums).
std::map<std::uint32_t, DistanceAccum> merge_accums(
    const std::vector<std::map<std::uint32_t, DistanceAccum>>& parts);

std::map<std::uint32_t, DistanceStats> finalize_by_distance(
    const std::map<std::uint32_t, DistanceAccum>& acc, double per_hop_delay_ms,
    std::size_t min_samples = kDefaultMinSamples);

// Convenience wrappers over the accumulate/finalize pair.
std::map<std::uint32_t, DistanceStats> by_distance(
    const MetricsLog& log, const std::vector<FailureRecord>& failures,
    double per_hop_delay_ms, std::size_t min_samples = kDefaultMinSamples);

std::map<std::uint32_t, double> hop_reduction_by_distance(const MetricsLog& log);
std::map<std::uint32_t, double> latency_by_distance(const MetricsLog& log);
std::map<std::uint32_t, double> latency_reduction_by_distance(
    const MetricsLog& log, double per_hop_delay_ms);

Summary overall_summary(const MetricsLog& log,
                        const std::vector<FailureRecord>& failures,
                        double per_hop_delay_ms);

// ---------- cache diversity ----------

struct Diversity {
  std::size_t unique_chunks = 0;
  std::size_t total_cached = 0;
  // total / unique; empty when nothing is cached (no data, not 1.0)
  std::optional<double> redundancy;
};

Diversity cache_diversity(const CacheSnapshot& snap);

} // namespace icnsim
