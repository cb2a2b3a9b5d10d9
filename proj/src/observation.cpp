#include "mjpslice/observation.hpp"

#include <cmath>
#include <limits>

namespace mjps {

TimedObservation exact_state_observation(double time, const State& observed) {
  TimedObservation obs;
  obs.time = time;
  obs.tag = 0;
  for (std::size_t i = 0; i < observed.dim(); ++i) obs.payload.push_back(observed[i]);
  obs.log_lik = [observed](const State& x) {
    return x == observed ? 0.0 : -std::numeric_limits<double>::infinity();
  };
  return obs;
}

JumpLabel birth_death_sign_label(std::int64_t x, std::int64_t x_next) {
  const std::int64_t diff = x_next - x;
  if (diff == 1 || diff == -1) return JumpLabel{tag::sign, diff};
  return no_observation();
}

JumpObservationSet thin_jump_observations(const MJPPath& path, const GeneratorModel& model,
                                          const std::function<double(const JumpLabel&)>& q_z,
                                          Rng& rng) {
  JumpObservationSet z;
  for (std::size_t i = 1; i < path.states.size(); ++i) {
    const JumpLabel lab = model.label(path.states[i - 1], path.states[i]);
    if (lab.empty()) continue;
    const double q = q_z(lab);
    if (q < 0.0 || q > 1.0) throw ModelError("thin_jump_observations: q_z outside [0,1]");
    // Draw even when q is 0 or 1 so the stream position does not depend on q.
    const bool keep = rng.bernoulli(q);
    if (keep) z.entries.push_back({path.times[i], lab});
  }
  return z;
}

JumpObservationSet thin_jump_observations(const MJPPath& path, const GeneratorModel& model,
                                          double q_z, Rng& rng) {
  return thin_jump_observations(
      path, model, [q_z](const JumpLabel&) { return q_z; }, rng);
}

double observation_window_loglik(const State& x, const std::vector<TimedObservation>& obs,
                                 std::size_t begin, std::size_t end) {
  double total = 0.0;
  for (std::size_t r = begin; r < end; ++r) total += obs[r].log_lik(x);
  return total;
}

void validate_jump_observations(const JumpObservationSet& z) {
  for (std::size_t i = 0; i < z.entries.size(); ++i) {
    if (z.entries[i].label.empty())
      throw ModelError("jump observations: no-observation label in Z");
    if (i > 0 && !(z.entries[i].time > z.entries[i - 1].time))
      throw ModelError("jump observations: times not strictly increasing");
  }
}

}  // namespace mjps
