#include "mjpslice/models.hpp"
#include "mjpslice/observation.hpp"

namespace mjps {

namespace {
constexpr std::size_t kBirth = 0;
constexpr std::size_t kDeath = 1;
}  // namespace

RateParams BirthDeath::make_rates() const {
  RateParams rates;
  rates.declare("birth", 1.0, false);
  rates.declare("death", 1.0, false);
  return rates;
}

void BirthDeath::outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const {
  out.clear();
  const std::int64_t n = x[0];
  out.push_back({State{n + 1}, rates.value(kBirth), kBirth, 1.0});
  if (n > 0) out.push_back({State{n - 1}, rates.value(kDeath), kDeath, 1.0});
}

double BirthDeath::rate_bound(const RateParams& rates) const {
  return rates.value(kBirth) + rates.value(kDeath);
}

JumpLabel BirthDeath::label(const State& from, const State& to) const {
  return birth_death_sign_label(from[0], to[0]);
}

void BirthDeath::compatible_predecessors(const State& to, const JumpLabel& lab,
                                         const RateParams& rates, std::vector<State>& out) const {
  out.clear();
  if (lab.empty() || lab.tag != tag::sign) return;
  const State pred{to[0] - lab.payload};
  if (pred[0] < 0) return;
  if (move_rate(pred, to, rates) > 0.0) out.push_back(pred);
}

}  // namespace mjps
