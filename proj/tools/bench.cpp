// Times the serial batch executor against the OpenMP one on the same spec
// and checks they serialize to identical bytes while it's at it.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "icnsim/experiment.hpp"

#ifdef ICNSIM_HAVE_OPENMP
#include <omp.h>
#endif

using namespace icnsim;

namespace {

ExperimentSpec bench_spec(bool quick) {
  const char* quick_json = R"js({
    "strategies": ["CEE", "LCD"],
    "seeds": {"base": 1, "count": 4},
    "topology": {"kind": "line", "n": 6},
    "workload": {"producers": "root", "requests_per_pair": 4},
    "snapshot_period_ms": 0
  })js";
  const char* full_json = R"js({
    "strategies": ["NoCache", "CEE", "LCD", "MCD", "Prob(0.5)", "ProbCache"],
    "seeds": {"base": 1, "count": 8},
    "topology": {"kind": "core", "branching_core": 4, "branching_leaf": 3,
                 "consumers_per_leaf": 1},
    "workload": {"requests_per_pair": 2},
    "snapshot_period_ms": 0
  })js";
  return parse_experiment_spec(quick ? quick_json : full_json);
}

std::string all_csvs(const ExperimentSpec& spec, const BatchResult& batch) {
  std::ostringstream out;
  write_retrievals_csv(out, batch);
  write_by_distance_csv(out, batch, spec.base.per_hop_delay_ms);
  write_summary_csv(out, batch, spec.base.per_hop_delay_ms);
  write_snapshots_csv(out, batch);
  return out.str();
}

template <typename F>
double time_s(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  ExperimentSpec spec = bench_spec(quick);
  std::size_t n_runs = spec.strategies.size() * spec.seeds.size();

  BatchResult serial, parallel;
  double t_serial = time_s([&] { serial = run_batch_serial(spec); });
  double t_parallel = time_s([&] { parallel = run_batch(spec, 0); });

  int threads = 1;
#ifdef ICNSIM_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif

  std::size_t records = 0;
  for (const BatchRun& r : serial.runs) records += r.result.retrievals.size();

  std::printf("%zu runs (%zu strategies x %zu seeds), %zu retrievals\n",
              n_runs, spec.strategies.size(), spec.seeds.size(), records);
  std::printf("  serial    %8.3f s\n", t_serial);
  std::printf("  parallel  %8.3f s  (%d threads, speedup %.2fx)\n", t_parallel,
              threads, t_parallel > 0 ? t_serial / t_parallel : 0.0);

  if (all_csvs(spec, serial) != all_csvs(spec, parallel)) {
    std::fprintf(stderr, "FAIL: serial and parallel outputs differ\n");
    return 1;
  }
  std::printf("outputs identical\n");
  return 0;
}
