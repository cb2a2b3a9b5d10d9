#ifndef MJPSLICE_SIMULATE_HPP
#define MJPSLICE_SIMULATE_HPP

#include <cstdint>

#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// Exact draw of the process over [0, horizon]: exponential holding times at
// the exit rate, next state in proportion to the outgoing rates. An absorbing
// state (exit rate 0) simply holds to the horizon.
MJPPath simulate_gillespie(const GeneratorModel& model, const RateParams& rates, double horizon,
                           Rng& rng);

// Forward draw through the uniformized construction: Exponential(omega) event
// clock with the discrete kernel P = I + Q/omega. Marginally equivalent to
// simulate_gillespie; used to check exactly that.
UniformizedPath simulate_uniformized(const GeneratorModel& model, const RateParams& rates,
                                     double omega, double horizon, Rng& rng);

}  // namespace mjps

#endif
