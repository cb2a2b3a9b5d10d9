#ifndef MJPSLICE_PATH_HPP
#define MJPSLICE_PATH_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mjpslice/generator.hpp"
#include "mjpslice/state.hpp"

namespace mjps {

// Piecewise-constant trajectory over [0, horizon]: times[0] == 0 and the
// process holds states[i] on [times[i], times[i+1]). No self-transitions.
struct MJPPath {
  std::vector<double> times;
  std::vector<State> states;
  double horizon = 0.0;

  std::size_t jump_count() const { return times.empty() ? 0 : times.size() - 1; }
  // State occupied at time t (right-continuous).
  const State& state_at(double t) const;
};

// Same, but self-transitions (virtual jumps) are permitted.
struct UniformizedPath {
  std::vector<double> times;
  std::vector<State> states;
  double horizon = 0.0;

  std::size_t transition_count() const { return times.empty() ? 0 : times.size() - 1; }
};

// Transition counts psi and holding times tau, plus the per-named-rate pools
// (match counts and weighted exposures) that drive the conjugate updates.
struct SufficientStats {
  std::map<std::pair<State, State>, std::size_t> transition_counts;
  std::map<State, double> holding_times;
  std::vector<std::size_t> rate_match_counts;  // psi_r, indexed like RateParams
  std::vector<double> rate_exposures;          // tau_r = integral of weight_r(X_t) dt

  std::size_t total_transitions() const;
  double total_holding() const;
};

// Structural invariants: throws ModelError describing the first violation.
void validate_path(const MJPPath& path, const GeneratorModel& model, const RateParams& rates);
void validate_upath(const UniformizedPath& upath, const GeneratorModel& model, const RateParams& rates);

// Remove all virtual (self) transitions, keeping every remaining time/state.
MJPPath strip_virtual(const UniformizedPath& upath);

// log f_X(path) per the MJP path likelihood: sum of log jump rates plus
// exponential survival terms including the final censored segment. A zero-rate
// transition yields -infinity (impossible path, distinct from a malformed one).
double path_log_density(const MJPPath& path, const GeneratorModel& model, const RateParams& rates);

SufficientStats sufficient_statistics(const MJPPath& path, const GeneratorModel& model,
                                      const RateParams& rates);

}  // namespace mjps

#endif
