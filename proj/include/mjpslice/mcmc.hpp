#ifndef MJPSLICE_MCMC_HPP
#define MJPSLICE_MCMC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mjpslice/ffbs.hpp"
#include "mjpslice/gibbs.hpp"

namespace mjps {

// Observed data of one process: timed measurements and retrieved jumps over
// a common horizon.
struct ProcessData {
  std::vector<TimedObservation> y;
  JumpObservationSet z;
  double horizon = 0.0;
};

enum class AssignMethod { gibbs, kmeans, pam };

struct McmcOptions {
  std::size_t iterations = 1000;  // total sweeps, including burn-in
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::size_t chains = 1;
  std::size_t clusters = 1;  // L
  double omega_scale = 2.0;
  SliceConfig slice;  // p and the q_z channel map
  std::size_t retry_limit = 25;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: serial reference sweep; >0: OpenMP across processes
  RatePrior prior;
  std::vector<OrderConstraint> constraints;
  MembershipPrior membership_prior;  // empty: uniform over clusters
  AssignMethod assign = AssignMethod::gibbs;
};

// Flattened rate name for trace output: "<rate>" when L == 1, "<rate>@<l>"
// otherwise.
std::string trace_rate_name(const std::string& rate, std::size_t cluster, std::size_t clusters);

struct McmcTrace {
  std::vector<std::string> rate_names;
  // [chain][kept iteration][rate]; kept iteration t=0 is the initialized state
  std::vector<std::vector<std::vector<double>>> rates;
  std::vector<std::size_t> kept_iters;
  // [chain][kept iteration][process]
  std::vector<std::vector<std::vector<int>>> memberships;
  // [chain][sweep]: wall seconds of the augmentation sweep
  std::vector<std::vector<double>> augment_seconds;
  AugmentStats stats;
  // [chain][process]: final augmented paths
  std::vector<std::vector<MJPPath>> final_paths;
  // [chain][cluster]: final rate values
  std::vector<std::vector<RateParams>> final_rates;

  std::vector<double> rate_trace(std::size_t chain, const std::string& name) const;
  double total_augment_seconds() const;
};

// Greedy starting path: place every Z jump at its time and connect segments
// by the shortest label-consistent transition sequences, avoiding moves on
// fully observed channels between anchors.
MJPPath thread_evidence(const GeneratorModel& model, const RateParams& rates,
                        const JumpObservationSet& z, const SliceConfig& cfg, double horizon);

// One augmentation sweep over all processes. The parallel variant distributes
// processes over OpenMP threads; per-process RNG streams key on (iteration,
// process), so both variants produce identical paths and stats.
void augment_sweep_serial(std::vector<MJPPath>& paths, const std::vector<ProcessData>& data,
                          const GeneratorModel& model,
                          const std::vector<RateParams>& cluster_rates,
                          const std::vector<int>& memberships, double omega,
                          const SliceConfig& cfg, std::size_t retry_limit, std::uint64_t seed,
                          std::uint64_t chain, std::uint64_t iteration, AugmentStats* stats);
void augment_sweep_parallel(std::vector<MJPPath>& paths, const std::vector<ProcessData>& data,
                            const GeneratorModel& model,
                            const std::vector<RateParams>& cluster_rates,
                            const std::vector<int>& memberships, double omega,
                            const SliceConfig& cfg, std::size_t retry_limit, std::uint64_t seed,
                            std::uint64_t chain, std::uint64_t iteration, AugmentStats* stats,
                            int threads);

// Full outer loop: augment every process, update memberships, update cluster
// rates; repeat. Deterministic given options.seed and chain count.
McmcTrace run_mcmc(const GeneratorModel& model, const std::vector<ProcessData>& data,
                   const McmcOptions& options);

}  // namespace mjps

#endif
