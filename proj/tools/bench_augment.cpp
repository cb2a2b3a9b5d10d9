// Benchmark: serial reference sweep vs the OpenMP sweep on a batch of
// simulated hospital processes, plus the p = 0 baseline cost for scale.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "mjpslice/mcmc.hpp"
#include "mjpslice/model_factory.hpp"
#include "mjpslice/simulate.hpp"

using namespace mjps;

namespace {

double time_sweeps(std::vector<MJPPath> paths, const std::vector<ProcessData>& data,
                   const GeneratorModel& model, const std::vector<RateParams>& rates,
                   const std::vector<int>& memberships, double omega, const SliceConfig& cfg,
                   int sweeps, int threads) {
  const auto start = std::chrono::steady_clock::now();
  for (int t = 1; t <= sweeps; ++t) {
    if (threads == 0)
      augment_sweep_serial(paths, data, model, rates, memberships, omega, cfg, 25, 7, 0,
                           static_cast<std::uint64_t>(t), nullptr);
    else
      augment_sweep_parallel(paths, data, model, rates, memberships, omega, cfg, 25, 7, 0,
                             static_cast<std::uint64_t>(t), nullptr, threads);
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  int processes = 16;
  int sweeps = 20;
  double horizon = 30.0;
  if (argc > 1) processes = std::atoi(argv[1]);
  if (argc > 2) sweeps = std::atoi(argv[2]);
  if (argc > 3) horizon = std::atof(argv[3]);

  const auto model = make_model("hospital_mmpp", {});
  RateParams rates = model->make_rates();
  rates.set_value("lambda1", 1.0);
  rates.set_value("lambda2", 2.0);

  std::vector<MJPPath> paths;
  std::vector<ProcessData> data;
  SliceConfig slice(0.35, 0.0);
  slice.set_tag_q_z(tag::discharge, 1.0);
  for (int k = 0; k < processes; ++k) {
    Rng rng(11, {static_cast<std::uint64_t>(StreamTag::simulate), static_cast<std::uint64_t>(k)});
    MJPPath path = simulate_gillespie(*model, rates, horizon, rng);
    ProcessData proc;
    proc.horizon = horizon;
    Rng thin_rng(11, {static_cast<std::uint64_t>(StreamTag::thin), static_cast<std::uint64_t>(k)});
    proc.z = thin_jump_observations(
        path, *model, [&slice](const JumpLabel& lab) { return slice.q_z(lab); }, thin_rng);
    paths.push_back(std::move(path));
    data.push_back(std::move(proc));
  }

  const double omega = 3.0 * model->rate_bound(rates);
  const std::vector<RateParams> cluster_rates{rates};
  const std::vector<int> memberships(processes, 0);

  std::printf("augment sweep benchmark: %d processes, %d sweeps, horizon %.1f\n", processes,
              sweeps, horizon);
  std::printf("%-28s %10s %10s\n", "variant", "seconds", "speedup");

  const double serial = time_sweeps(paths, data, *model, cluster_rates, memberships, omega, slice,
                                    sweeps, 0);
  std::printf("%-28s %10.3f %10s\n", "serial reference (p=0.35)", serial, "1.00x");

  std::vector<int> thread_counts{2};
  if (omp_get_max_threads() != 2) thread_counts.push_back(omp_get_max_threads());
  for (int threads : thread_counts) {
    const double par = time_sweeps(paths, data, *model, cluster_rates, memberships, omega, slice,
                                   sweeps, threads);
    std::printf("%-21s %2d thr %10.3f %9.2fx\n", "openmp (p=0.35)", threads, par, serial / par);
  }

  SliceConfig flat(0.0, 0.0);
  flat.set_tag_q_z(tag::discharge, 1.0);
  const double baseline = time_sweeps(paths, data, *model, cluster_rates, memberships, omega,
                                      flat, sweeps, 0);
  std::printf("%-28s %10.3f\n", "serial reference (p=0)", baseline);
  std::printf("clamped sweep (p=0.35) runs %.1fx faster than p=0\n", baseline / serial);
  return 0;
}
