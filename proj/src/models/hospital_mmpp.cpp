#include <algorithm>

#include "mjpslice/models.hpp"

namespace mjps {

namespace {
constexpr std::size_t kLambda1 = 0;
constexpr std::size_t kLambda2 = 1;
constexpr std::size_t kMu = 2;
constexpr std::size_t kNu = 3;
}  // namespace

JumpLabel hospital_label(const State& from, const State& to) {
  if (from == to) return no_observation();
  const std::int64_t da = to[0] - from[0];
  const std::int64_t dd = to[1] - from[1];
  const std::int64_t dr = to[2] - from[2];
  if (da == 1 && dd == 0 && dr == 0) return JumpLabel{tag::admission, to[0]};
  if (da == 0 && dd == 1 && dr == 0) return JumpLabel{tag::discharge, to[1]};
  if (da == 0 && dd == 0 && dr != 0 && (to[2] == 1 || to[2] == 2))
    return JumpLabel{tag::regime, to[2]};
  return no_observation();
}

HospitalMmpp::HospitalMmpp(double mu, double nu, std::int64_t manpower_busy,
                           std::int64_t manpower_quiet)
    : mu_(mu), nu_(nu), l1_(manpower_busy), l2_(manpower_quiet) {
  if (!(mu > 0.0) || !(nu > 0.0)) throw ModelError("hospital_mmpp: mu and nu must be positive");
  if (l1_ < 1 || l2_ < 1) throw ModelError("hospital_mmpp: manpower must be at least 1");
}

RateParams HospitalMmpp::make_rates() const {
  RateParams rates;
  rates.declare("lambda1", 1.0, false);
  rates.declare("lambda2", 2.0, false);
  rates.declare("mu", mu_, true);
  rates.declare("nu", nu_, true);
  return rates;
}

void HospitalMmpp::outgoing(const State& x, const RateParams& rates,
                            std::vector<Move>& out) const {
  out.clear();
  const std::int64_t a = x[0], d = x[1], r = x[2];
  if (r != 1 && r != 2) throw ModelError("hospital_mmpp: regime outside {1,2}");

  const std::size_t lambda_idx = (r == 1) ? kLambda1 : kLambda2;
  out.push_back({State{a + 1, d, r}, rates.value(lambda_idx), lambda_idx, 1.0});
  out.push_back({State{a, d, 3 - r}, rates.value(kNu), kNu, 1.0});
  if (a > d) {
    const double staffed = static_cast<double>(std::min(manpower(r), a - d));
    out.push_back({State{a, d + 1, r}, rates.value(kMu) * staffed, kMu, staffed});
  }
}

double HospitalMmpp::rate_bound(const RateParams& rates) const {
  return std::max(rates.value(kLambda1), rates.value(kLambda2)) + rates.value(kNu) +
         rates.value(kMu) * static_cast<double>(std::max(l1_, l2_));
}

JumpLabel HospitalMmpp::label(const State& from, const State& to) const {
  return hospital_label(from, to);
}

void HospitalMmpp::compatible_predecessors(const State& to, const JumpLabel& lab,
                                           const RateParams& rates,
                                           std::vector<State>& out) const {
  out.clear();
  const std::int64_t a = to[0], d = to[1], r = to[2];
  if (lab.tag == tag::admission && lab.payload == a && a >= 1) {
    out.push_back(State{a - 1, d, r});
  } else if (lab.tag == tag::discharge && lab.payload == d && d >= 1) {
    const State pred{a, d - 1, r};
    if (move_rate(pred, to, rates) > 0.0) out.push_back(pred);
  } else if (lab.tag == tag::regime && lab.payload == r) {
    out.push_back(State{a, d, 3 - r});
  }
}

std::vector<OrderConstraint> HospitalMmpp::default_constraints() const {
  return {OrderConstraint{1.25, "lambda1", "lambda2", -1, -1}};
}

std::map<std::int32_t, double> HospitalMmpp::default_tag_q_z() const {
  return {{tag::admission, 0.0}, {tag::regime, 0.0}, {tag::discharge, 1.0}};
}

}  // namespace mjps
