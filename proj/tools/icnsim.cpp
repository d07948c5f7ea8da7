// Command-line front end: run experiment batches, compare strategies from a
// summary file, and dump generated topologies for eyeballing.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "icnsim/errors.hpp"
#include "icnsim/experiment.hpp"
#include "icnsim/routing.hpp"

using namespace icnsim;

namespace {

// --out beats the spec's out_dir, which beats $ICNSIM_OUT_DIR, which beats
// a plain "out" next to wherever you ran from.
std::string pick_out_dir(const std::string& cli_out, const ExperimentSpec& spec) {
  if (!cli_out.empty()) return cli_out;
  if (!spec.out_dir.empty()) return spec.out_dir;
  if (const char* env = std::getenv("ICNSIM_OUT_DIR"); env && *env) return env;
  return "out";
}

std::vector<NodeId> producer_set(const ExperimentSpec& spec, const Topology& topo) {
  if (spec.base.workload.producers == WorkloadSpec::Producers::Root)
    return {0};
  std::vector<NodeId> all(topo.node_count());
  for (NodeId v = 0; v < topo.node_count(); ++v) all[v] = v;
  return all;
}

int cmd_run(const std::string& spec_path, const std::string& cli_out,
            std::uint64_t seed_override, bool have_seed, int threads) {
  ExperimentSpec spec = load_experiment_spec(spec_path);
  if (have_seed) spec.seeds = {seed_override};

  BatchResult batch = run_batch(spec, threads);
  std::string out_dir = pick_out_dir(cli_out, spec);
  write_all_csvs(spec, batch, out_dir);

  std::cout << format_batch_table(spec, batch);
  std::cout << "wrote retrievals.csv, by_distance.csv, summary.csv, "
               "snapshots.csv to "
            << out_dir << "/\n";
  return 0;
}

int cmd_compare(const std::string& summary, const std::string& a,
                const std::string& b, const std::string& metric) {
  CompareReport rep = compare_from_summary(summary, a, b, metric);
  std::cout << format_compare(rep);
  return 0;
}

int cmd_topo_dump(const std::string& spec_path, std::uint64_t seed_override,
                  bool have_seed) {
  ExperimentSpec spec = load_experiment_spec(spec_path);
  std::uint64_t seed = have_seed ? seed_override
                                 : (spec.seeds.empty() ? 1 : spec.seeds[0]);
  Topology topo = build_topology(spec.base.topology, seed);
  PathStats stats = path_stats(topo);

  std::printf("# %u nodes, %zu links, diameter %u, mean distance %.3f\n",
              static_cast<unsigned>(topo.node_count()), topo.link_count(), stats.diameter,
              stats.mean);
  std::printf("# edges: u v [delay_ms [loss]]\n");
  std::fputs(topo.to_edge_list().c_str(), stdout);

  RoutingTable rt = build_fibs(topo, producer_set(spec, topo));
  std::printf("# fibs: node prefix next_hop rank\n");
  std::fputs(rt.dump().c_str(), stdout);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic ICN caching-strategy simulator"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, summary_path, label_a, label_b;
  std::string metric = "mean_hops";
  std::uint64_t seed = 0;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "run a batch and write CSVs");
  run->add_option("spec", spec_path, "experiment spec (JSON)")->required();
  run->add_option("--out", out_dir, "output directory");
  CLI::Option* run_seed =
      run->add_option("--seed", seed, "run only this seed");
  run->add_option("--threads", threads, "worker threads (0 = all)");

  CLI::App* cmp = app.add_subcommand("compare", "line up two strategies");
  cmp->add_option("summary", summary_path, "summary.csv from a run")->required();
  cmp->add_option("--a", label_a, "first strategy label")->required();
  cmp->add_option("--b", label_b, "second strategy label")->required();
  cmp->add_option("--metric", metric, "summary column (default mean_hops)");

  CLI::App* topo = app.add_subcommand("topo-dump", "print topology and FIBs");
  topo->add_option("spec", spec_path, "experiment spec (JSON)")->required();
  CLI::Option* topo_seed =
      topo->add_option("--seed", seed, "generate with this seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run)
      return cmd_run(spec_path, out_dir, seed, run_seed->count() > 0, threads);
    if (*cmp) return cmd_compare(summary_path, label_a, label_b, metric);
    if (*topo) return cmd_topo_dump(spec_path, seed, topo_seed->count() > 0);
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
