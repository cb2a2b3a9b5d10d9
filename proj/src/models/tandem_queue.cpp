#include "mjpslice/models.hpp"

namespace mjps {

namespace {
constexpr std::size_t kMu1 = 0;
constexpr std::size_t kLambda = 1;
constexpr std::size_t kMu2 = 2;
}  // namespace

JumpLabel tandem_label(const State& from, const State& to) {
  if (from == to) return no_observation();
  const std::int64_t d1 = to[0] - from[0];
  const std::int64_t d2 = to[1] - from[1];
  if (d1 == 1 && d2 == 0) return JumpLabel{tag::entry, to[0]};
  if (d1 == 0 && d2 == -1) return JumpLabel{tag::departure, to[1]};
  return no_observation();  // internal transfer (x1-1, x2+1) is unobservable
}

TandemQueue::TandemQueue(double lambda, double mu2) : lambda_(lambda), mu2_(mu2) {
  if (!(lambda > 0.0) || !(mu2 > 0.0))
    throw ModelError("tandem: lambda and mu2 must be positive");
}

RateParams TandemQueue::make_rates() const {
  RateParams rates;
  rates.declare("mu1", 1.0, false);
  rates.declare("lambda", lambda_, true);
  rates.declare("mu2", mu2_, true);
  return rates;
}

void TandemQueue::outgoing(const State& x, const RateParams& rates, std::vector<Move>& out) const {
  out.clear();
  const std::int64_t x1 = x[0], x2 = x[1];
  out.push_back({State{x1 + 1, x2}, rates.value(kLambda), kLambda, 1.0});
  if (x1 > 0) out.push_back({State{x1 - 1, x2 + 1}, rates.value(kMu1), kMu1, 1.0});
  if (x2 > 0) out.push_back({State{x1, x2 - 1}, rates.value(kMu2), kMu2, 1.0});
}

double TandemQueue::rate_bound(const RateParams& rates) const {
  return rates.value(kLambda) + rates.value(kMu1) + rates.value(kMu2);
}

JumpLabel TandemQueue::label(const State& from, const State& to) const {
  return tandem_label(from, to);
}

void TandemQueue::compatible_predecessors(const State& to, const JumpLabel& lab,
                                          const RateParams& rates, std::vector<State>& out) const {
  out.clear();
  const std::int64_t x1 = to[0], x2 = to[1];
  if (lab.tag == tag::entry && lab.payload == x1 && x1 >= 1) {
    out.push_back(State{x1 - 1, x2});
  } else if (lab.tag == tag::departure && lab.payload == x2) {
    const State pred{x1, x2 + 1};
    if (move_rate(pred, to, rates) > 0.0) out.push_back(pred);
  }
}

}  // namespace mjps
