#include "icnsim/metrics.hpp"

#include <set>

#include "icnsim/errors.hpp"

namespace icnsim {

double baseline_latency_ms(std::uint32_t distance, double per_hop_delay_ms) {
  return static_cast<double>(distance) * per_hop_delay_ms;
}

std::map<std::uint32_t, DistanceAccum> accumulate_by_distance(
    const MetricsLog& log, const std::vector<FailureRecord>& failures) {
  if (log.empty() && failures.empty())
    throw EmptyLog("no retrievals to aggregate");
  std::map<std::uint32_t, DistanceAccum> acc;
  for (const RetrievalRecord& r : log) {
    DistanceAccum& a = acc[r.distance];
    a.n += 1;
    a.sum_hops += r.hops_to_hit;
    a.sum_hop_reduction += static_cast<double>(r.distance) - r.hops_to_hit;
    a.sum_latency_ms += us_to_ms(r.latency_us);
  }
  for (const FailureRecord& f : failures) acc[f.distance].failures += 1;
  return acc;
}

std::map<std::uint32_t, DistanceAccum> merge_accums(
    const std::vector<std::map<std::uint32_t, DistanceAccum>>& parts) {
  std::map<std::uint32_t, DistanceAccum> out;
  for (const auto& part : parts)
    for (const auto& [d, a] : part) {
      DistanceAccum& o = out[d];
      o.n += a.n;
      o.failures += a.failures;
      o.sum_hops += a.sum_hops;
      o.sum_hop_reduction += a.sum_hop_reduction;
      o.sum_latency_ms += a.sum_latency_ms;
    }
  return out;
}

std::map<std::uint32_t, DistanceStats> finalize_by_distance(
    const std::map<std::uint32_t, DistanceAccum>& acc, double per_hop_delay_ms,
    std::size_t min_samples) {
  std::map<std::uint32_t, DistanceStats> out;
  for (const auto& [d, a] : acc) {
    DistanceStats s;
    s.distance = d;
    s.n = a.n;
    s.failures = a.failures;
    s.low_confidence = a.n < min_samples;
    if (a.n > 0) {
      double n = static_cast<double>(a.n);
      s.mean_hops = a.sum_hops / n;
      s.mean_hop_reduction = a.sum_hop_reduction / n;
      s.mean_latency_ms = a.sum_latency_ms / n;
      s.mean_latency_reduction_ms =
          baseline_latency_ms(d, per_hop_delay_ms) - s.mean_latency_ms;
    }
    out.emplace(d, s);
  }
  return out;
}

std::map<std::uint32_t, DistanceStats> by_distance(
    const MetricsLog& log, const std::vector<FailureRecord>& failures,
    double per_hop_delay_ms, std::size_t min_samples) {
  return finalize_by_distance(accumulate_by_distance(log, failures),
                              per_hop_delay_ms, min_samples);
}

std::map<std::uint32_t, double> hop_reduction_by_distance(const MetricsLog& log) {
  std::map<std::uint32_t, double> out;
  for (const auto& [d, s] : by_distance(log, {}, 0.0))
    if (s.n > 0) out[d] = s.mean_hop_reduction;
  return out;
}

std::map<std::uint32_t, double> latency_by_distance(const MetricsLog& log) {
  std::map<std::uint32_t, double> out;
  for (const auto& [d, s] : by_distance(log, {}, 0.0))
    if (s.n > 0) out[d] = s.mean_latency_ms;
  return out;
}

std::map<std::uint32_t, double> latency_reduction_by_distance(
    const MetricsLog& log, double per_hop_delay_ms) {
  std::map<std::uint32_t, double> out;
  for (const auto& [d, s] : by_distance(log, {}, per_hop_delay_ms))
    if (s.n > 0) out[d] = s.mean_latency_reduction_ms;
  return out;
}

Summary overall_summary(const MetricsLog& log,
                        const std::vector<FailureRecord>& failures,
                        double per_hop_delay_ms) {
  if (log.empty() && failures.empty())
    throw EmptyLog("no retrievals to summarize");
  Summary s;
  s.failures = failures.size();
  for (const RetrievalRecord& r : log) {
    s.n += 1;
    s.mean_hops += r.hops_to_hit;
    s.mean_latency_ms += us_to_ms(r.latency_us);
    s.mean_latency_reduction_ms +=
        baseline_latency_ms(r.distance, per_hop_delay_ms) - us_to_ms(r.latency_us);
  }
  if (s.n > 0) {
    double n = static_cast<double>(s.n);
    s.mean_hops /= n;
    s.mean_latency_ms /= n;
    s.mean_latency_reduction_ms /= n;
  }
  return s;
}

Diversity cache_diversity(const CacheSnapshot& snap) {
  Diversity d;
  std::set<ChunkName> unique;
  for (const auto& node_contents : snap.contents) {
    d.total_cached += node_contents.size();
    unique.insert(node_contents.begin(), node_contents.end());
  }
  d.unique_chunks = unique.size();
  if (d.unique_chunks > 0)
    d.redundancy = static_cast<double>(d.total_cached) /
                   static_cast<double>(d.unique_chunks);
  return d;
}

} // namespace icnsim
