#include "mjpslice/generator.hpp"

#include <cmath>

namespace mjps {

double GeneratorModel::exit_rate(const State& x, const RateParams& rates) const {
  std::vector<Move> moves;
  outgoing(x, rates, moves);
  double total = 0.0;
  for (const auto& m : moves) total += m.rate;
  return total;
}

double GeneratorModel::move_rate(const State& x, const State& to, const RateParams& rates) const {
  std::vector<Move> moves;
  outgoing(x, rates, moves);
  for (const auto& m : moves)
    if (m.target == to) return m.rate;
  return 0.0;
}

void validate_row(const GeneratorModel& model, const State& x, const RateParams& rates) {
  std::vector<Move> moves;
  model.outgoing(x, rates, moves);
  double total = 0.0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& m = moves[i];
    if (!std::isfinite(m.rate) || m.rate <= 0.0)
      throw ModelError("model " + model.name() + ": non-finite or non-positive rate out of " + x.str());
    if (m.target == x) throw ModelError("model " + model.name() + ": self-target in row of " + x.str());
    if (m.target.dim() != model.dimension())
      throw ModelError("model " + model.name() + ": dimension mismatch in row of " + x.str());
    for (std::size_t j = i + 1; j < moves.size(); ++j)
      if (moves[j].target == m.target)
        throw ModelError("model " + model.name() + ": duplicate target in row of " + x.str());
    const double expected = rates.value(m.rate_index) * m.weight;
    if (std::abs(m.rate - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
      throw ModelError("model " + model.name() + ": rate decomposition mismatch out of " + x.str());
    total += m.rate;
  }
  const double bound = model.rate_bound(rates);
  if (total > bound * (1.0 + 1e-12))
    throw ModelError("model " + model.name() + ": rate bound violated at " + x.str());
}

}  // namespace mjps
