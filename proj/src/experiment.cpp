#include "icnsim/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "icnsim/errors.hpp"

#ifdef ICNSIM_HAVE_OPENMP
#include <omp.h>
#endif

namespace icnsim {

using nlohmann::json;

namespace {

// ---------- spec parsing ----------

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw SpecError("spec field \"" + path + "\": " + why);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      bad_field(path.empty() ? it.key() : path + "." + it.key(),
                "unknown field");
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback, double lo, double hi) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    bad_field(path + key, "expected a number");
  double x = v.get<double>();
  if (x < lo || x > hi)
    bad_field(path + key, "out of range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
  return x;
}

std::uint32_t get_u32(const json& obj, const std::string& path,
                      const std::string& key, std::uint32_t fallback,
                      std::uint32_t lo = 0, std::uint32_t hi = UINT32_MAX) {
  double x = get_num(obj, path, key, fallback, lo, hi);
  if (x != static_cast<std::uint32_t>(x))
    bad_field(path + key, "expected an integer");
  return static_cast<std::uint32_t>(x);
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad_field(path + key, "expected true or false");
  return v.get<bool>();
}

std::string get_str(const json& obj, const std::string& path,
                    const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) bad_field(path + key, "expected a string");
  return v.get<std::string>();
}

TopologySpec parse_topology_spec(const json& j) {
  TopologySpec t;
  if (!j.is_object()) bad_field("topology", "expected an object");
  std::string kind = get_str(j, "topology.", "kind", "");
  if (kind == "line") {
    check_keys(j, "topology", {"kind", "n"});
    t.kind = TopologySpec::Kind::Line;
    t.n = get_u32(j, "topology.", "n", 2, 2);
  } else if (kind == "core") {
    check_keys(j, "topology",
               {"kind", "branching_core", "branching_leaf", "consumers_per_leaf"});
    t.kind = TopologySpec::Kind::Core;
    t.branching_core = get_u32(j, "topology.", "branching_core", 4, 1);
    t.branching_leaf = get_u32(j, "topology.", "branching_leaf", 3, 1);
    t.consumers_per_leaf = get_u32(j, "topology.", "consumers_per_leaf", 1, 1);
  } else if (kind == "edge") {
    check_keys(j, "topology",
               {"kind", "spokes", "spoke_len", "consumers_per_spoke"});
    t.kind = TopologySpec::Kind::Edge;
    t.spokes = get_u32(j, "topology.", "spokes", 8, 1);
    t.spoke_len = get_u32(j, "topology.", "spoke_len", 2, 1);
    t.consumers_per_spoke = get_u32(j, "topology.", "consumers_per_spoke", 3, 1);
  } else if (kind == "random_geometric") {
    check_keys(j, "topology",
               {"kind", "n", "range", "area", "max_diameter", "max_retries", "seed"});
    t.kind = TopologySpec::Kind::RandomGeo;
    t.geo.n = get_u32(j, "topology.", "n", t.geo.n, 2);
    t.geo.range = get_num(j, "topology.", "range", t.geo.range, 1e-9, 1e9);
    t.geo.area = get_num(j, "topology.", "area", t.geo.area, 1e-9, 1e18);
    t.geo.max_diameter = get_u32(j, "topology.", "max_diameter", t.geo.max_diameter);
    t.geo.max_retries = get_u32(j, "topology.", "max_retries", t.geo.max_retries, 1);
    if (j.contains("seed"))
      t.seed = static_cast<std::uint64_t>(
          get_num(j, "topology.", "seed", 0, 0, 1e18));
  } else if (kind == "file") {
    check_keys(j, "topology", {"kind", "path"});
    t.kind = TopologySpec::Kind::File;
    t.path = get_str(j, "topology.", "path", "");
    if (t.path.empty()) bad_field("topology.path", "required for kind \"file\"");
  } else {
    bad_field("topology.kind",
              "expected line, core, edge, random_geometric or file");
  }
  return t;
}

WorkloadSpec parse_workload_spec(const json& j, std::uint32_t chunk_count) {
  WorkloadSpec w;
  if (!j.is_object()) bad_field("workload", "expected an object");
  check_keys(j, "workload",
             {"kind", "producers", "consumers", "requests_per_pair", "window_ms",
              "spacing_ms", "requests"});
  std::string kind = get_str(j, "workload.", "kind", "paper");
  if (kind == "paper")
    w.kind = WorkloadSpec::Kind::Paper;
  else if (kind == "scripted")
    w.kind = WorkloadSpec::Kind::Scripted;
  else
    bad_field("workload.kind", "expected paper or scripted");

  std::string prod = get_str(j, "workload.", "producers", "all");
  if (prod == "all")
    w.producers = WorkloadSpec::Producers::All;
  else if (prod == "root")
    w.producers = WorkloadSpec::Producers::Root;
  else
    bad_field("workload.producers", "expected all or root");

  std::string cons = get_str(j, "workload.", "consumers", "all");
  if (cons == "all")
    w.consumers = WorkloadSpec::Consumers::All;
  else if (cons == "leaves")
    w.consumers = WorkloadSpec::Consumers::Leaves;
  else
    bad_field("workload.consumers", "expected all or leaves");

  w.requests_per_pair = get_u32(j, "workload.", "requests_per_pair", 1, 1);
  w.window_ms = get_num(j, "workload.", "window_ms", w.window_ms, 0, 1e12);
  w.spacing_ms = get_num(j, "workload.", "spacing_ms", w.spacing_ms, 0, 1e12);

  if (w.kind == WorkloadSpec::Kind::Scripted) {
    if (!j.contains("requests") || !j.at("requests").is_array() ||
        j.at("requests").empty())
      bad_field("workload.requests", "scripted workload needs a request list");
    std::size_t idx = 0;
    for (const json& r : j.at("requests")) {
      std::string path = "workload.requests[" + std::to_string(idx) + "]";
      if (!r.is_object()) bad_field(path, "expected an object");
      check_keys(r, path, {"consumer", "prefix", "chunk", "time_ms"});
      ScriptedRequest s;
      s.consumer = get_u32(r, path + ".", "consumer", 0);
      s.prefix = get_u32(r, path + ".", "prefix", 0);
      s.chunk_id = get_u32(r, path + ".", "chunk", 0, 0, chunk_count - 1);
      s.time_ms = get_num(r, path + ".", "time_ms", 0.0, 0, 1e12);
      w.requests.push_back(s);
      ++idx;
    }
  } else if (j.contains("requests")) {
    bad_field("workload.requests", "only valid for the scripted workload");
  }
  return w;
}

} // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  check_keys(j, "",
             {"strategies", "seeds", "out_dir", "topology", "workload",
              "chunk_count", "cache_capacity", "cs_policy", "cache_at_consumer",
              "per_hop_delay_ms", "jitter_ms", "loss", "pit_timeout_ms",
              "retries", "max_sim_time_ms", "snapshot_period_ms"});

  ExperimentSpec spec;

  if (!j.contains("strategies") || !j.at("strategies").is_array() ||
      j.at("strategies").empty())
    bad_field("strategies", "required: a non-empty list of strategy names");
  for (const json& s : j.at("strategies")) {
    if (!s.is_string()) bad_field("strategies", "entries must be strings");
    spec.strategies.push_back(parse_strategy(s.get<std::string>()));
  }

  if (j.contains("seeds")) {
    const json& seeds = j.at("seeds");
    if (seeds.is_array()) {
      for (const json& s : seeds) {
        if (!s.is_number()) bad_field("seeds", "entries must be numbers");
        spec.seeds.push_back(s.get<std::uint64_t>());
      }
    } else if (seeds.is_object()) {
      check_keys(seeds, "seeds", {"base", "count"});
      std::uint64_t base = static_cast<std::uint64_t>(
          get_num(seeds, "seeds.", "base", 1, 0, 1e18));
      std::uint32_t count = get_u32(seeds, "seeds.", "count", 1, 1);
      for (std::uint32_t i = 0; i < count; ++i) spec.seeds.push_back(base + i);
    } else {
      bad_field("seeds", "expected a list or {base, count}");
    }
    if (spec.seeds.empty()) bad_field("seeds", "must not be empty");
  } else {
    spec.seeds.push_back(1);
  }

  spec.out_dir = get_str(j, "", "out_dir", "");

  RunConfig& c = spec.base;
  c.chunk_count = get_u32(j, "", "chunk_count", 50, 1);
  c.cache_capacity = get_u32(j, "", "cache_capacity", 5);
  std::string policy = get_str(j, "", "cs_policy", "lru");
  if (policy == "lru")
    c.cs_policy = CsPolicy::Lru;
  else if (policy == "fifo")
    c.cs_policy = CsPolicy::Fifo;
  else if (policy == "random")
    c.cs_policy = CsPolicy::Random;
  else
    bad_field("cs_policy", "expected lru, fifo or random");
  c.cache_at_consumer = get_bool(j, "", "cache_at_consumer", false);
  c.per_hop_delay_ms = get_num(j, "", "per_hop_delay_ms", 10.0, 0, 1e9);
  c.jitter_ms = get_num(j, "", "jitter_ms", 0.0, 0, 1e9);
  c.loss = get_num(j, "", "loss", 0.0, 0.0, 1.0);
  c.pit_timeout_ms = get_num(j, "", "pit_timeout_ms", 2000.0, 1e-3, 1e12);
  c.retries = get_u32(j, "", "retries", 3);
  c.max_sim_time_ms = get_num(j, "", "max_sim_time_ms", 300000.0, 1, 1e15);
  c.snapshot_period_ms = get_num(j, "", "snapshot_period_ms", 10000.0, 0, 1e15);

  if (j.contains("topology")) c.topology = parse_topology_spec(j.at("topology"));
  if (j.contains("workload"))
    c.workload = parse_workload_spec(j.at("workload"), c.chunk_count);

  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str());
}

RunConfig config_for(const ExperimentSpec& spec, const StrategyParams& strategy,
                     std::uint64_t seed) {
  RunConfig c = spec.base;
  c.strategy = strategy;
  c.seed = seed;
  return c;
}

// ---------- batch execution ----------

BatchResult run_batch_serial(const ExperimentSpec& spec) {
  BatchResult batch;
  batch.runs.reserve(spec.strategies.size() * spec.seeds.size());
  for (const StrategyParams& s : spec.strategies)
    for (std::uint64_t seed : spec.seeds) {
      BatchRun r;
      r.strategy = s;
      r.seed = seed;
      r.result = run(config_for(spec, s, seed));
      batch.runs.push_back(std::move(r));
    }
  return batch;
}

BatchResult run_batch(const ExperimentSpec& spec, int threads) {
  BatchResult batch;
  const std::size_t n = spec.strategies.size() * spec.seeds.size();
  batch.runs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.runs[i].strategy = spec.strategies[i / spec.seeds.size()];
    batch.runs[i].seed = spec.seeds[i % spec.seeds.size()];
  }
#ifdef ICNSIM_HAVE_OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
  std::exception_ptr failure = nullptr;
  // runs share nothing mutable; each writes only its own slot
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      batch.runs[i].result =
          run(config_for(spec, batch.runs[i].strategy, batch.runs[i].seed));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  (void)threads;
  for (std::size_t i = 0; i < n; ++i)
    batch.runs[i].result =
        run(config_for(spec, batch.runs[i].strategy, batch.runs[i].seed));
#endif
  return batch;
}

// ---------- CSV output ----------

namespace {

std::string fmt_ms(SimTime us) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", us_to_ms(us));
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

} // namespace

void write_retrievals_csv(std::ostream& out, const BatchResult& batch) {
  out << "strategy,seed,seq,consumer,prefix,chunk,distance,hops_to_hit,"
         "hit_node,issue_ms,satisfy_ms,latency_ms,retries\n";
  for (const BatchRun& runit : batch.runs) {
    std::string label = strategy_label(runit.strategy);
    for (const RetrievalRecord& r : runit.result.retrievals) {
      out << label << ',' << runit.seed << ',' << r.seq << ',' << r.consumer
          << ',' << r.prefix << ',' << r.chunk_id << ',' << r.distance << ','
          << r.hops_to_hit << ',' << r.hit_node << ',' << fmt_ms(r.issue_us)
          << ',' << fmt_ms(r.satisfy_us) << ',' << fmt_ms(r.latency_us) << ','
          << r.retries << '\n';
    }
  }
}

void write_by_distance_csv(std::ostream& out, const BatchResult& batch,
                           double per_hop_delay_ms, std::size_t min_samples) {
  out << "strategy,distance,n,failures,mean_hops,hop_reduction,"
         "mean_latency_ms,latency_reduction_ms,low_confidence\n";
  // pool every strategy's runs; spec order is preserved by first appearance
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::map<std::uint32_t, DistanceAccum>>> pools;
  for (const BatchRun& runit : batch.runs) {
    std::string label = strategy_label(runit.strategy);
    if (!pools.count(label)) order.push_back(label);
    if (runit.result.retrievals.empty() && runit.result.failures.empty())
      continue;
    pools[label].push_back(accumulate_by_distance(runit.result.retrievals,
                                                  runit.result.failures));
  }
  for (const std::string& label : order) {
    auto stats = finalize_by_distance(merge_accums(pools[label]),
                                      per_hop_delay_ms, min_samples);
    for (const auto& [d, s] : stats) {
      out << label << ',' << d << ',' << s.n << ',' << s.failures << ','
          << fmt6(s.mean_hops) << ',' << fmt6(s.mean_hop_reduction) << ','
          << fmt6(s.mean_latency_ms) << ',' << fmt6(s.mean_latency_reduction_ms)
          << ',' << (s.low_confidence ? 1 : 0) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const BatchResult& batch,
                       double per_hop_delay_ms) {
  out << "strategy,seed,n,failures,failure_rate,mean_hops,mean_latency_ms,"
         "mean_latency_reduction_ms\n";
  for (const BatchRun& runit : batch.runs) {
    Summary s = overall_summary(runit.result.retrievals, runit.result.failures,
                                per_hop_delay_ms);
    double total = static_cast<double>(s.n + s.failures);
    double failure_rate = total > 0 ? static_cast<double>(s.failures) / total : 0.0;
    out << strategy_label(runit.strategy) << ',' << runit.seed << ',' << s.n
        << ',' << s.failures << ',' << fmt6(failure_rate) << ','
        << fmt6(s.mean_hops) << ',' << fmt6(s.mean_latency_ms) << ','
        << fmt6(s.mean_latency_reduction_ms) << '\n';
  }
}

void write_snapshots_csv(std::ostream& out, const BatchResult& batch) {
  out << "strategy,seed,time_ms,node,slot,prefix,chunk\n";
  for (const BatchRun& runit : batch.runs) {
    std::string label = strategy_label(runit.strategy);
    for (const CacheSnapshot& snap : runit.result.snapshots) {
      for (NodeId node = 0; node < snap.contents.size(); ++node) {
        const auto& entries = snap.contents[node];
        for (std::size_t slot = 0; slot < entries.size(); ++slot) {
          out << label << ',' << runit.seed << ',' << fmt_ms(snap.time_us) << ','
              << node << ',' << slot << ',' << entries[slot].prefix << ','
              << entries[slot].chunk_id << '\n';
        }
      }
    }
  }
}

void write_all_csvs(const ExperimentSpec& spec, const BatchResult& batch,
                    const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw SimError(std::string("cannot write ") + name + " in " + out_dir);
    return f;
  };
  {
    auto f = open("retrievals.csv");
    write_retrievals_csv(f, batch);
  }
  {
    auto f = open("by_distance.csv");
    write_by_distance_csv(f, batch, spec.base.per_hop_delay_ms);
  }
  {
    auto f = open("summary.csv");
    write_summary_csv(f, batch, spec.base.per_hop_delay_ms);
  }
  {
    auto f = open("snapshots.csv");
    write_snapshots_csv(f, batch);
  }
}

std::string format_batch_table(const ExperimentSpec& spec,
                               const BatchResult& batch) {
  // seed-pooled per strategy
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %6s %9s %9s %12s %14s %10s\n",
                "strategy", "seeds", "records", "failures", "mean_hops",
                "mean_lat_ms", "lat_red_ms");
  out << line;
  for (const StrategyParams& s : spec.strategies) {
    std::string label = strategy_label(s);
    MetricsLog pooled;
    std::vector<FailureRecord> failures;
    std::size_t seeds = 0;
    for (const BatchRun& runit : batch.runs) {
      if (strategy_label(runit.strategy) != label) continue;
      seeds += 1;
      pooled.insert(pooled.end(), runit.result.retrievals.begin(),
                    runit.result.retrievals.end());
      failures.insert(failures.end(), runit.result.failures.begin(),
                      runit.result.failures.end());
    }
    if (pooled.empty() && failures.empty()) continue;
    Summary sum = overall_summary(pooled, failures, spec.base.per_hop_delay_ms);
    std::snprintf(line, sizeof(line), "%-16s %6zu %9zu %9zu %12.4f %14.4f %10.4f\n",
                  label.c_str(), seeds, sum.n, sum.failures, sum.mean_hops,
                  sum.mean_latency_ms, sum.mean_latency_reduction_ms);
    out << line;
  }
  return out.str();
}

// ---------- compare ----------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

CompareReport compare_from_summary(const std::string& summary_path,
                                   const std::string& label_a,
                                   const std::string& label_b,
                                   const std::string& metric) {
  std::ifstream in(summary_path);
  if (!in) throw SpecError("cannot open summary file: " + summary_path);
  std::string header;
  if (!std::getline(in, header)) throw SpecError("empty summary file");
  auto cols = split_csv_line(header);
  auto col_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) {
      std::string available;
      for (std::size_t i = 2; i < cols.size(); ++i)
        available += (available.empty() ? "" : ", ") + cols[i];
      throw SpecError("metric \"" + name + "\" not in summary (available: " +
                      available + ")");
    }
    return static_cast<std::size_t>(it - cols.begin());
  };
  std::size_t strategy_col = col_of("strategy");
  std::size_t seed_col = col_of("seed");
  std::size_t metric_col = col_of(metric);

  std::map<std::uint64_t, double> a_vals, b_vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() <= std::max({strategy_col, seed_col, metric_col}))
      throw SpecError("malformed summary row: " + line);
    const std::string& strat = fields[strategy_col];
    if (strat != label_a && strat != label_b) continue;
    std::uint64_t seed = std::stoull(fields[seed_col]);
    double v = std::stod(fields[metric_col]);
    (strat == label_a ? a_vals : b_vals)[seed] = v;
  }
  if (a_vals.empty())
    throw SpecError("strategy \"" + label_a + "\" not found in summary");
  if (b_vals.empty())
    throw SpecError("strategy \"" + label_b + "\" not found in summary");

  CompareReport rep;
  rep.metric = metric;
  rep.label_a = label_a;
  rep.label_b = label_b;
  for (const auto& [seed, av] : a_vals) {
    auto bt = b_vals.find(seed);
    if (bt == b_vals.end()) continue;
    rep.rows.push_back({seed, av, bt->second});
    rep.mean_a += av;
    rep.mean_b += bt->second;
    if (av < bt->second)
      rep.a_lower += 1;
    else if (bt->second < av)
      rep.b_lower += 1;
    else
      rep.ties += 1;
  }
  if (rep.rows.empty())
    throw SpecError("no seeds shared between \"" + label_a + "\" and \"" +
                    label_b + "\"");
  rep.mean_a /= static_cast<double>(rep.rows.size());
  rep.mean_b /= static_cast<double>(rep.rows.size());
  return rep;
}

std::string format_compare(const CompareReport& rep) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%s on %zu matched seeds\n",
                rep.metric.c_str(), rep.rows.size());
  out << line;
  std::snprintf(line, sizeof(line), "  %-20s mean %.6f\n", rep.label_a.c_str(),
                rep.mean_a);
  out << line;
  std::snprintf(line, sizeof(line), "  %-20s mean %.6f\n", rep.label_b.c_str(),
                rep.mean_b);
  out << line;
  std::snprintf(line, sizeof(line), "  difference (a-b)     %+.6f\n",
                rep.mean_a - rep.mean_b);
  out << line;
  std::snprintf(line, sizeof(line),
                "  per-seed: a lower in %zu, b lower in %zu, ties %zu\n",
                rep.a_lower, rep.b_lower, rep.ties);
  out << line;
  return out.str();
}

} // namespace icnsim
