#ifndef MJPSLICE_RUNNER_HPP
#define MJPSLICE_RUNNER_HPP

#include <string>
#include <vector>

#include "mjpslice/config.hpp"
#include "mjpslice/io.hpp"

namespace mjps {

// Subcommand bodies shared by the CLI and the integration tests. Each writes
// its artifacts under out_dir and prints a short summary to stdout.
void cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
void cmd_infer(const RunConfig& cfg, const std::string& out_dir);
void cmd_cluster(const RunConfig& cfg, const std::string& out_dir);
void cmd_compare(const RunConfig& cfg, const std::string& out_dir);

// Simulation helper also used by tests: K paths, their thinned jump
// observations and optional exact-state observation grid.
struct SimulatedData {
  std::vector<MJPPath> paths;
  std::vector<ProcessData> data;
};
SimulatedData simulate_processes(const RunConfig& cfg, const GeneratorModel& model,
                                 const RateParams& rates);

// One cell of the compare grid.
struct CompareCell {
  double p = 0.0;
  double omega_scale = 0.0;
  std::vector<std::string> rate_names;
  std::vector<double> ess;           // mean over chains, per rate
  std::vector<double> ess_per_sec;   // per rate
  double mean_augment_seconds = 0.0; // per sweep, averaged over chains
  double pct_time_decrease = 0.0;    // vs the p = 0 cell at the same scale
};
std::vector<CompareCell> run_compare_grid(const RunConfig& cfg, const GeneratorModel& model,
                                          const std::vector<ProcessData>& data);

}  // namespace mjps

#endif
