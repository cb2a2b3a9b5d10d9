#ifndef MJPSLICE_MODELS_HPP
#define MJPSLICE_MODELS_HPP

#include <cstdint>
#include <map>
#include <memory>

#include "mjpslice/generator.hpp"

namespace mjps {

// Sparse 3-state chain on states {1,2,3}: free rates alpha (1->2) and delta
// (3->2); the 2->3 and 3->1 rates are declared unit constants. Labels are
// jump signs for accessible pairs.
class ToyThreeState final : public GeneratorModel {
 public:
  ToyThreeState();
  std::size_t dimension() const override { return 1; }
  State initial_state() const override { return State{1}; }
  void outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const override;
  double rate_bound(const RateParams& rates) const override;
  JumpLabel label(const State& from, const State& to) const override;
  void compatible_predecessors(const State& to, const JumpLabel& lab, const RateParams& rates,
                               std::vector<State>& out) const override;
  RateParams make_rates() const override;
  std::string name() const override { return "toy3"; }
};

// Birth-death walk on the nonnegative integers with sign-of-jump labels.
class BirthDeath final : public GeneratorModel {
 public:
  explicit BirthDeath(std::int64_t x0 = 0) : x0_(x0) {}
  std::size_t dimension() const override { return 1; }
  State initial_state() const override { return State{x0_}; }
  void outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const override;
  double rate_bound(const RateParams& rates) const override;
  JumpLabel label(const State& from, const State& to) const override;
  void compatible_predecessors(const State& to, const JumpLabel& lab, const RateParams& rates,
                               std::vector<State>& out) const override;
  RateParams make_rates() const override;
  std::string name() const override { return "birth_death"; }

 private:
  std::int64_t x0_;
};

// Markov-modulated admissions unit: state (a, d, r) = cumulative admissions,
// cumulative discharges, regime in {1,2}. Free arrival rates lambda1/lambda2
// per regime; fixed discharge rate mu (with manpower exposure min(L_r, a-d))
// and symmetric regime-switch rate nu. Discharges are fully observed,
// admissions and regime flips never are.
class HospitalMmpp final : public GeneratorModel {
 public:
  HospitalMmpp(double mu, double nu, std::int64_t manpower_busy, std::int64_t manpower_quiet);
  std::size_t dimension() const override { return 3; }
  State initial_state() const override { return State{0, 0, 1}; }
  void outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const override;
  double rate_bound(const RateParams& rates) const override;
  JumpLabel label(const State& from, const State& to) const override;
  void compatible_predecessors(const State& to, const JumpLabel& lab, const RateParams& rates,
                               std::vector<State>& out) const override;
  RateParams make_rates() const override;
  std::vector<OrderConstraint> default_constraints() const override;
  std::map<std::int32_t, double> default_tag_q_z() const;
  std::string name() const override { return "hospital_mmpp"; }

  std::int64_t manpower(std::int64_t regime) const { return regime == 1 ? l1_ : l2_; }

 private:
  double mu_, nu_;
  std::int64_t l1_, l2_;
};

// Two M/M/1 stations in series: state (x1, x2) task counts. Arrivals at fixed
// lambda, synchronized transfer at the free rate mu1, departures at fixed
// mu2. Entries and departures are observable; the internal transfer never is.
class TandemQueue final : public GeneratorModel {
 public:
  TandemQueue(double lambda, double mu2);
  std::size_t dimension() const override { return 2; }
  State initial_state() const override { return State{0, 0}; }
  void outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const override;
  double rate_bound(const RateParams& rates) const override;
  JumpLabel label(const State& from, const State& to) const override;
  void compatible_predecessors(const State& to, const JumpLabel& lab, const RateParams& rates,
                               std::vector<State>& out) const override;
  RateParams make_rates() const override;
  std::string name() const override { return "tandem"; }

 private:
  double lambda_, mu2_;
};

// Jump-label maps of the admissions and tandem models as free functions,
// usable without instantiating a model.
JumpLabel hospital_label(const State& from, const State& to);
JumpLabel tandem_label(const State& from, const State& to);

}  // namespace mjps

#endif
