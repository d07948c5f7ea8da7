#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "icnsim/engine.hpp"

namespace icnsim {

// A batch: one set of run parameters crossed with a strategy list and a
// seed list.  Runs share nothing mutable, so the batch can execute on any
// number of threads with identical output.
struct ExperimentSpec {
  std::vector<StrategyParams> strategies;
  std::vector<std::uint64_t> seeds;
  RunConfig base; // strategy and seed are overwritten per run
  std::string out_dir;
};

ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::string& path);

struct BatchRun {
  StrategyParams strategy;
  std::uint64_t seed = 0;
  RunResult result;
};

struct BatchResult {
  std::vector<BatchRun> runs; // strategy-major, seed-minor, spec order
};

RunConfig config_for(const ExperimentSpec& spec, const StrategyParams& strategy,
                     std::uint64_t seed);

// Reference executor: plain loop, one run at a time.
BatchResult run_batch_serial(const ExperimentSpec& spec);

// Parallel executor over the independent (strategy, seed) runs.  threads
// <= 0 means "all available".  Output is byte-identical to the serial path;
// kept separate so tests can hold the two against each other.
BatchResult run_batch(const ExperimentSpec& spec, int threads = 0);

// ---------- CSV output ----------
// All writers emit rows in (spec order, request seq) order and format
// numbers through fixed snprintf patterns, so identical batches serialize
// to identical bytes.

void write_retrievals_csv(std::ostream& out, const BatchResult& batch);
void write_by_distance_csv(std::ostream& out, const BatchResult& batch,
                           double per_hop_delay_ms,
                           std::size_t min_samples = kDefaultMinSamples);
void write_summary_csv(std::ostream& out, const BatchResult& batch,
                       double per_hop_delay_ms);
void write_snapshots_csv(std::ostream& out, const BatchResult& batch);

// Writes retrievals.csv, by_distance.csv, summary.csv, snapshots.csv.
void write_all_csvs(const ExperimentSpec& spec, const BatchResult& batch,
                    const std::string& out_dir);

// Human-readable per-strategy table for the terminal.
std::string format_batch_table(const ExperimentSpec& spec, const BatchResult& batch);

// ---------- compare ----------

struct CompareReport {
  std::string metric;
  std::string label_a, label_b;
  struct Row {
    std::uint64_t seed = 0;
    double a = 0.0, b = 0.0;
  };
  std::vector<Row> rows; // seeds present for both strategies
  double mean_a = 0.0, mean_b = 0.0;
  std::size_t a_lower = 0, b_lower = 0, ties = 0;
};

// Reads a summary.csv produced by write_summary_csv and lines up strategy A
// against strategy B on the given metric over their shared seeds.
CompareReport compare_from_summary(const std::string& summary_path,
                                   const std::string& label_a,
                                   const std::string& label_b,
                                   const std::string& metric);

std::string format_compare(const CompareReport& report);

} // namespace icnsim
