#ifndef MJPSLICE_TEST_ORACLES_HPP
#define MJPSLICE_TEST_ORACLES_HPP

// Independent oracles for the test suites: everything here is computed from
// first principles (dense matrices, exhaustive enumeration, closed forms) and
// never calls the sampling code it is used to check.

#include <map>
#include <vector>

#include "mjpslice/ffbs.hpp"
#include "mjpslice/mcmc.hpp"

namespace mjps::testing {

using Matrix = std::vector<std::vector<double>>;

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix identity(std::size_t n);

// Dense matrix exponential by scaling and squaring of a Taylor series.
Matrix expm(const Matrix& a, double t);

// Dense generator over an explicit finite state list.
Matrix dense_generator(const GeneratorModel& model, const RateParams& rates,
                       const std::vector<State>& states);

// Exact smoothing on a finite chain: the conditional marginal of the state at
// any time, given exact-state observations, via matrix-exponential forward
// and backward recursions.
class FiniteChainSmoother {
 public:
  FiniteChainSmoother(const GeneratorModel& model, const RateParams& rates,
                      std::vector<State> states, const State& x0,
                      std::vector<std::pair<double, State>> observations, double horizon);

  // Distribution over the state list at time s, conditioned on every observation.
  std::vector<double> marginal_at(double s) const;

 private:
  std::vector<State> states_;
  std::vector<std::pair<double, State>> obs_;
  double horizon_;
  Matrix q_;
  std::size_t x0_idx_;
  std::vector<std::vector<double>> forward_;   // filtered mass after each observation
  std::vector<std::vector<double>> backward_;  // likelihood of future observations
  std::size_t index_of(const State& s) const;
};

// Exhaustive law of the uniformized state sequence given the transition grid,
// slot restrictions implied by (u, Z), timed observations and the full
// probability model (kernel, thinning, auxiliary draws). Keys are state-index
// sequences over `states`, including the fixed initial index.
std::map<std::vector<std::size_t>, double> enumerate_sequence_law(
    const GeneratorModel& model, const RateParams& rates, const std::vector<State>& states,
    const UniformizedPath& grid, const AuxiliarySequence& aux, const JumpObservationSet& z,
    const std::vector<TimedObservation>& y, double omega, const SliceConfig& cfg);

// Total variation distance between two distributions over arbitrary keys.
template <typename Key>
double total_variation(const std::map<Key, double>& a, const std::map<Key, double>& b) {
  double tv = 0.0;
  for (const auto& [key, pa] : a) {
    auto it = b.find(key);
    tv += std::abs(pa - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [key, pb] : b)
    if (!a.count(key)) tv += pb;
  return 0.5 * tv;
}

// Chi-square goodness-of-fit p-value of observed nonnegative counts against a
// Poisson(mean) law, pooling tail bins to expected >= 5.
double poisson_gof_pvalue(const std::vector<std::uint64_t>& counts, double mean);

}  // namespace mjps::testing

#endif
