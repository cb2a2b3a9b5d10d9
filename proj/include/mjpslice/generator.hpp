#ifndef MJPSLICE_GENERATOR_HPP
#define MJPSLICE_GENERATOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mjpslice/label.hpp"
#include "mjpslice/rates.hpp"
#include "mjpslice/state.hpp"

namespace mjps {

// One off-diagonal generator entry out of a state. Every transition is driven
// by exactly one named rate with a state-dependent multiplier:
//   rate == rates.value(rate_index) * weight.
// The decomposition is what the conjugate updates count and expose.
struct Move {
  State target;
  double rate = 0.0;
  std::size_t rate_index = 0;
  double weight = 1.0;
};

// Sparse view of a generator Q over a countable structured space. Rows are
// produced on demand; Assumption: every row is finite, self-target free and
// duplicate free, and a model-supplied bound dominates every reachable exit
// rate (models with unbounded rates are rejected at construction).
//
// Implementations must be pure: outgoing(x, rates) may depend only on its
// arguments, so models are freely shared across threads.
class GeneratorModel {
 public:
  virtual ~GeneratorModel() = default;

  virtual std::size_t dimension() const = 0;
  virtual State initial_state() const = 0;

  virtual void outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const = 0;

  // Global dominating constant: >= sup over reachable x of |Q_x|.
  virtual double rate_bound(const RateParams& rates) const = 0;

  // Label map 𝒯 over ordered state pairs. 𝒯(x,x) = none for all x.
  virtual JumpLabel label(const State& from, const State& to) const = 0;

  // Finite inverse: all x with 𝒯(x, to) == lab and rate(x -> to) > 0.
  virtual void compatible_predecessors(const State& to, const JumpLabel& lab,
                                       const RateParams& rates, std::vector<State>& out) const = 0;

  // Rate schema with declared constants filled in; free rates carry their
  // model defaults until the caller overwrites them.
  virtual RateParams make_rates() const = 0;

  // Same-cluster identifiability constraints the model declares.
  virtual std::vector<OrderConstraint> default_constraints() const { return {}; }

  virtual std::string name() const = 0;

  double exit_rate(const State& x, const RateParams& rates) const;

  // Convenience: rate of the specific move x -> to, 0 if absent.
  double move_rate(const State& x, const State& to, const RateParams& rates) const;
};

// Sanity pass used by tests and model construction: row finiteness, no
// self-targets or duplicates, positive rates, bound domination; throws
// ModelError on violation.
void validate_row(const GeneratorModel& model, const State& x, const RateParams& rates);

}  // namespace mjps

#endif
