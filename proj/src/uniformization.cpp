#include "mjpslice/uniformization.hpp"

#include <algorithm>
#include <cmath>

namespace mjps {

void kernel_row(const GeneratorModel& model, const RateParams& rates, double omega, const State& x,
                std::vector<std::pair<State, double>>& row) {
  row.clear();
  std::vector<Move> moves;
  model.outgoing(x, rates, moves);
  double exit = 0.0;
  for (const auto& m : moves) exit += m.rate;
  if (exit > omega * (1.0 + 1e-12))
    throw DominatingRateError("kernel_row: omega " + std::to_string(omega) +
                              " < exit rate at " + x.str());
  row.reserve(moves.size() + 1);
  row.emplace_back(x, std::max(0.0, 1.0 - exit / omega));
  for (const auto& m : moves) row.emplace_back(m.target, m.rate / omega);
}

UniformizedPath resample_virtual_times(const MJPPath& path, double omega,
                                       const GeneratorModel& model, const RateParams& rates,
                                       Rng& rng) {
  UniformizedPath upath;
  upath.horizon = path.horizon;

  std::vector<double> segment_times;
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    const State& x = path.states[i];
    const double t0 = path.times[i];
    const double t1 = (i + 1 < path.times.size()) ? path.times[i + 1] : path.horizon;

    upath.times.push_back(t0);
    upath.states.push_back(x);

    const double exit = model.exit_rate(x, rates);
    if (exit > omega * (1.0 + 1e-12))
      throw DominatingRateError("resample_virtual_times: omega < exit rate at " + x.str());
    const double virtual_rate = std::max(0.0, omega - exit);
    if (virtual_rate <= 0.0 || t1 <= t0) continue;

    const std::uint64_t count = rng.poisson(virtual_rate * (t1 - t0));
    if (count == 0) continue;
    segment_times.clear();
    for (std::uint64_t j = 0; j < count; ++j) segment_times.push_back(rng.uniform(t0, t1));
    std::sort(segment_times.begin(), segment_times.end());
    for (double t : segment_times) {
      upath.times.push_back(t);
      upath.states.push_back(x);
    }
  }
  return upath;
}

}  // namespace mjps
