#include "mjpslice/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mjps {

const State& MJPPath::state_at(double t) const {
  // last index with times[i] <= t
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - times.begin());
  if (idx == 0) return states.front();
  return states[idx - 1];
}

std::size_t SufficientStats::total_transitions() const {
  std::size_t n = 0;
  for (const auto& [pair, count] : transition_counts) n += count;
  return n;
}

double SufficientStats::total_holding() const {
  double t = 0.0;
  for (const auto& [state, dur] : holding_times) t += dur;
  return t;
}

static void validate_skeleton(const std::vector<double>& times, const std::vector<State>& states,
                              double horizon) {
  if (times.empty() || times.size() != states.size()) throw ModelError("path: times/states size mismatch");
  if (times.front() != 0.0) throw ModelError("path: must start at t=0");
  if (!(horizon > 0.0) && !(times.size() == 1 && horizon == 0.0))
    throw ModelError("path: horizon must be positive");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ModelError("path: times not strictly increasing");
  if (times.back() > horizon) throw ModelError("path: jump past the horizon");
}

void validate_path(const MJPPath& path, const GeneratorModel& model, const RateParams& rates) {
  validate_skeleton(path.times, path.states, path.horizon);
  for (std::size_t i = 1; i < path.states.size(); ++i) {
    if (path.states[i] == path.states[i - 1]) throw ModelError("path: self-transition");
    if (model.move_rate(path.states[i - 1], path.states[i], rates) <= 0.0)
      throw ModelError("path: zero-rate transition at index " + std::to_string(i));
  }
}

void validate_upath(const UniformizedPath& upath, const GeneratorModel& model,
                    const RateParams& rates) {
  validate_skeleton(upath.times, upath.states, upath.horizon);
  for (std::size_t i = 1; i < upath.states.size(); ++i) {
    if (upath.states[i] == upath.states[i - 1]) continue;
    if (model.move_rate(upath.states[i - 1], upath.states[i], rates) <= 0.0)
      throw ModelError("uniformized path: zero-rate transition at index " + std::to_string(i));
  }
}

MJPPath strip_virtual(const UniformizedPath& upath) {
  MJPPath out;
  out.horizon = upath.horizon;
  out.times.push_back(upath.times.front());
  out.states.push_back(upath.states.front());
  for (std::size_t i = 1; i < upath.states.size(); ++i) {
    if (upath.states[i] == upath.states[i - 1]) continue;
    out.times.push_back(upath.times[i]);
    out.states.push_back(upath.states[i]);
  }
  return out;
}

double path_log_density(const MJPPath& path, const GeneratorModel& model, const RateParams& rates) {
  double logp = 0.0;
  std::vector<Move> moves;
  for (std::size_t i = 0; i + 1 < path.states.size(); ++i) {
    const double dt = path.times[i + 1] - path.times[i];
    logp -= model.exit_rate(path.states[i], rates) * dt;
    const double r = model.move_rate(path.states[i], path.states[i + 1], rates);
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    logp += std::log(r);
  }
  logp -= model.exit_rate(path.states.back(), rates) * (path.horizon - path.times.back());
  return logp;
}

SufficientStats sufficient_statistics(const MJPPath& path, const GeneratorModel& model,
                                      const RateParams& rates) {
  SufficientStats stats;
  stats.rate_match_counts.assign(rates.size(), 0);
  stats.rate_exposures.assign(rates.size(), 0.0);
  std::vector<Move> moves;
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    const State& x = path.states[i];
    const double until = (i + 1 < path.times.size()) ? path.times[i + 1] : path.horizon;
    const double dt = until - path.times[i];
    stats.holding_times[x] += dt;

    model.outgoing(x, rates, moves);
    for (const auto& m : moves) stats.rate_exposures[m.rate_index] += m.weight * dt;
    if (i + 1 < path.states.size()) {
      stats.transition_counts[{x, path.states[i + 1]}] += 1;
      for (const auto& m : moves) {
        if (m.target == path.states[i + 1]) {
          stats.rate_match_counts[m.rate_index] += 1;
          break;
        }
      }
    }
  }
  return stats;
}

}  // namespace mjps
