#ifndef MJPSLICE_UNIFORMIZATION_HPP
#define MJPSLICE_UNIFORMIZATION_HPP

#include <utility>
#include <vector>

#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// Dominating-rate choice: omega = scale_k * rate_bound with scale_k > 1, so
// omega strictly dominates every exit rate and every self-entry of P is
// positive.
struct UniformizationConfig {
  double scale_k = 2.0;

  double omega(const GeneratorModel& model, const RateParams& rates) const {
    if (!(scale_k > 1.0)) throw ConfigError("omega_scale must be > 1");
    return scale_k * model.rate_bound(rates);
  }
};

// Sparse row of P = I + Q/omega at x: each outgoing target with probability
// rate/omega plus the self entry 1 - exit/omega. Entries sum to 1.
void kernel_row(const GeneratorModel& model, const RateParams& rates, double omega, const State& x,
                std::vector<std::pair<State, double>>& row);

// Conditional draw of the virtual-jump times given the current path: on each
// constant segment, a Poisson process of rate omega - exit_rate(state),
// realized as uniform order statistics given the Poisson count. Real jumps
// are retained untouched.
UniformizedPath resample_virtual_times(const MJPPath& path, double omega,
                                       const GeneratorModel& model, const RateParams& rates,
                                       Rng& rng);

}  // namespace mjps

#endif
