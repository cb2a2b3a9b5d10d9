#include "mjpslice/simulate.hpp"

#include <cmath>

#include "mjpslice/uniformization.hpp"

namespace mjps {

MJPPath simulate_gillespie(const GeneratorModel& model, const RateParams& rates, double horizon,
                           Rng& rng) {
  if (!(horizon >= 0.0)) throw ModelError("simulate_gillespie: horizon must be nonnegative");
  MJPPath path;
  path.horizon = horizon;
  path.times.push_back(0.0);
  path.states.push_back(model.initial_state());

  std::vector<Move> moves;
  std::vector<double> weights;
  double t = 0.0;
  State x = model.initial_state();
  for (;;) {
    model.outgoing(x, rates, moves);
    double exit = 0.0;
    for (const auto& m : moves) {
      if (!std::isfinite(m.rate)) throw ModelError("simulate_gillespie: non-finite rate at " + x.str());
      exit += m.rate;
    }
    if (exit <= 0.0) break;  // absorbing: hold to the horizon
    t += rng.exponential(exit);
    if (t >= horizon) break;
    weights.clear();
    for (const auto& m : moves) weights.push_back(m.rate);
    x = moves[rng.categorical(weights)].target;
    path.times.push_back(t);
    path.states.push_back(x);
  }
  return path;
}

UniformizedPath simulate_uniformized(const GeneratorModel& model, const RateParams& rates,
                                     double omega, double horizon, Rng& rng) {
  UniformizedPath upath;
  upath.horizon = horizon;
  upath.times.push_back(0.0);
  upath.states.push_back(model.initial_state());

  std::vector<std::pair<State, double>> row;
  std::vector<double> weights;
  double t = 0.0;
  State x = model.initial_state();
  for (;;) {
    t += rng.exponential(omega);
    if (t >= horizon) break;
    kernel_row(model, rates, omega, x, row);
    weights.clear();
    for (const auto& [target, prob] : row) weights.push_back(prob);
    x = row[rng.categorical(weights)].first;
    upath.times.push_back(t);
    upath.states.push_back(x);
  }
  return upath;
}

}  // namespace mjps
