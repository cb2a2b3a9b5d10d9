#ifndef MJPSLICE_OBSERVATION_HPP
#define MJPSLICE_OBSERVATION_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mjpslice/label.hpp"
#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// One timed measurement Y_r. The likelihood is an arbitrary callback so
// exact, categorical, and noisy-count observation schemes all fit; tag and
// payload exist only so concrete schemes can serialize.
struct TimedObservation {
  double time = 0.0;
  std::int32_t tag = 0;
  std::vector<std::int64_t> payload;
  std::function<double(const State&)> log_lik;
};

// Exact-state observation: log-likelihood 0 on a match, -infinity otherwise.
TimedObservation exact_state_observation(double time, const State& observed);

// Retrieved jump observations Z: (time, non-empty label) in increasing time.
struct JumpObservationSet {
  struct Entry {
    double time;
    JumpLabel label;
  };
  std::vector<Entry> entries;
};

// Sign-of-jump map for integer chains: x' - x when |x' - x| == 1, no
// observation otherwise.
JumpLabel birth_death_sign_label(std::int64_t x, std::int64_t x_next);

// Independent thinning: every non-empty labeled jump of the path is retained
// with probability q_z(label).
JumpObservationSet thin_jump_observations(const MJPPath& path, const GeneratorModel& model,
                                          const std::function<double(const JumpLabel&)>& q_z,
                                          Rng& rng);
JumpObservationSet thin_jump_observations(const MJPPath& path, const GeneratorModel& model,
                                          double q_z, Rng& rng);

// Sum of log f_Y(Y_r | x) over the supplied observations; empty list is 0,
// -infinity propagates.
double observation_window_loglik(const State& x, const std::vector<TimedObservation>& obs,
                                 std::size_t begin, std::size_t end);
inline double observation_window_loglik(const State& x, const std::vector<TimedObservation>& obs) {
  return observation_window_loglik(x, obs, 0, obs.size());
}

void validate_jump_observations(const JumpObservationSet& z);

}  // namespace mjps

#endif
