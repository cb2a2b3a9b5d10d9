#include <algorithm>

#include "mjpslice/models.hpp"

namespace mjps {

namespace {
// Rate layout: alpha (1->2), rate23 (2->3, fixed 1), rate31 (3->1, fixed 1),
// delta (3->2).
constexpr std::size_t kAlpha = 0;
constexpr std::size_t kRate23 = 1;
constexpr std::size_t kRate31 = 2;
constexpr std::size_t kDelta = 3;
}  // namespace

ToyThreeState::ToyThreeState() = default;

RateParams ToyThreeState::make_rates() const {
  RateParams rates;
  rates.declare("alpha", 2.0, false);
  rates.declare("rate23", 1.0, true);
  rates.declare("rate31", 1.0, true);
  rates.declare("delta", 0.5, false);
  return rates;
}

void ToyThreeState::outgoing(const State& x, const RateParams& rates,
                             std::vector<Move>& out) const {
  out.clear();
  switch (x[0]) {
    case 1:
      out.push_back({State{2}, rates.value(kAlpha), kAlpha, 1.0});
      break;
    case 2:
      out.push_back({State{3}, rates.value(kRate23), kRate23, 1.0});
      break;
    case 3:
      out.push_back({State{1}, rates.value(kRate31), kRate31, 1.0});
      out.push_back({State{2}, rates.value(kDelta), kDelta, 1.0});
      break;
    default:
      throw ModelError("toy3: state outside {1,2,3}");
  }
}

double ToyThreeState::rate_bound(const RateParams& rates) const {
  return std::max({rates.value(kAlpha), rates.value(kRate23),
                   rates.value(kRate31) + rates.value(kDelta)});
}

JumpLabel ToyThreeState::label(const State& from, const State& to) const {
  if (from == to) return no_observation();
  // Accessible pairs only: 1->2, 2->3, 3->1, 3->2.
  const std::int64_t a = from[0], b = to[0];
  const bool accessible =
      (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && (b == 1 || b == 2));
  if (!accessible) return no_observation();
  return JumpLabel{tag::sign, b > a ? 1 : -1};
}

void ToyThreeState::compatible_predecessors(const State& to, const JumpLabel& lab,
                                            const RateParams& rates,
                                            std::vector<State>& out) const {
  out.clear();
  for (std::int64_t s = 1; s <= 3; ++s) {
    const State x{s};
    if (x == to) continue;
    if (label(x, to) == lab && move_rate(x, to, rates) > 0.0) out.push_back(x);
  }
}

}  // namespace mjps
