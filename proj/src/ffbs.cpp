#include "mjpslice/ffbs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace mjps {

double Frontier::weight_of(const State& x) const {
  auto it = std::lower_bound(weights.begin(), weights.end(), x,
                             [](const auto& entry, const State& s) { return entry.first < s; });
  if (it != weights.end() && it->first == x) return it->second;
  return 0.0;
}

RestrictionSequence build_restrictions(const std::vector<double>& transition_times,
                                       const AuxiliarySequence& aux, const JumpObservationSet& z,
                                       const GeneratorModel& model) {
  (void)model;
  const std::size_t m = transition_times.size();
  if (aux.nodes.size() != m)
    throw ModelError("build_restrictions: auxiliary sequence length mismatch");

  RestrictionSequence out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (aux.nodes[i].clamped) out[i] = SlotRestriction::with_label(aux.nodes[i].label, false);
  }
  for (const auto& entry : z.entries) {
    auto it = std::lower_bound(transition_times.begin(), transition_times.end(), entry.time);
    if (it == transition_times.end() || *it != entry.time)
      throw ModelError("build_restrictions: Z time matches no transition time");
    const std::size_t i = static_cast<std::size_t>(it - transition_times.begin());
    if (out[i].kind == SlotRestriction::Kind::label && !(out[i].label == entry.label))
      throw ModelError("build_restrictions: clamp contradicts Z label at slot " +
                       std::to_string(i + 1));
    out[i] = SlotRestriction::with_label(entry.label, true);
  }
  return out;
}

namespace {

// Expansion buffer: (target, weight) pairs, sorted and merged per slot. A
// sorted flat vector beats hashing on these frontier sizes and keeps the
// accumulation order deterministic.
using Accumulator = std::vector<std::pair<State, double>>;

void merge_duplicates(Accumulator& acc) {
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < acc.size();) {
    State state = acc[i].first;
    double w = 0.0;
    while (i < acc.size() && acc[i].first == state) w += acc[i++].second;
    acc[out++] = {state, w};
  }
  acc.resize(out);
}

// Per-pair factor of slot i: the kernel entry times, on slots without a real
// Z record, the phi penalty. Zero when the restriction excludes the pair.
// `moves` is scratch space for the row of x.
double slot_pair_weight(const SlotRestriction& slot, const State& x, const State& x_next,
                        const GeneratorModel& model, const RateParams& rates, double omega,
                        const SliceConfig& cfg, std::vector<Move>& moves) {
  model.outgoing(x, rates, moves);
  if (x == x_next) {
    if (!slot.allows_self()) return 0.0;
    double exit = 0.0;
    for (const auto& m : moves) exit += m.rate;
    const double p_self = 1.0 - exit / omega;
    if (p_self <= 0.0) return 0.0;
    return slot.from_z ? p_self : p_self * phi_label(no_observation(), cfg);
  }
  double rate = 0.0;
  for (const auto& m : moves)
    if (m.target == x_next) rate = m.rate;
  if (rate <= 0.0) return 0.0;
  const JumpLabel lab = model.label(x, x_next);
  if (slot.kind == SlotRestriction::Kind::label && !(lab == slot.label)) return 0.0;
  const double p_move = rate / omega;
  return slot.from_z ? p_move : p_move * phi_label(lab, cfg);
}

Frontier normalize(Accumulator& acc, std::size_t slot_index) {
  Frontier frontier;
  frontier.weights.reserve(acc.size());
  for (auto& [state, w] : acc)
    if (w > 0.0) frontier.weights.emplace_back(state, w);
  double total = 0.0;
  for (const auto& [state, w] : frontier.weights) total += w;
  if (!(total > 0.0))
    throw InfeasibleSliceError(slot_index,
                               "forward_filter: frontier emptied at slot " + std::to_string(slot_index));
  for (auto& [state, w] : frontier.weights) w /= total;
  return frontier;
}

// Multiplies in the window's observation likelihoods; runs on the merged
// accumulator before normalization.
void apply_observations(Accumulator& acc, const std::vector<TimedObservation>& y,
                        std::size_t begin, std::size_t end) {
  if (begin >= end) return;
  for (auto& [state, w] : acc) {
    const double ll = observation_window_loglik(state, y, begin, end);
    w = (ll == -std::numeric_limits<double>::infinity()) ? 0.0 : w * std::exp(ll);
  }
}

}  // namespace

std::vector<Frontier> forward_filter(const UniformizedPath& grid,
                                     const RestrictionSequence& restrictions,
                                     const std::vector<TimedObservation>& y,
                                     const GeneratorModel& model, const RateParams& rates,
                                     double omega, const SliceConfig& cfg) {
  const std::size_t m = grid.transition_count();
  if (restrictions.size() != m) throw ModelError("forward_filter: restriction length mismatch");
  for (std::size_t r = 1; r < y.size(); ++r)
    if (y[r].time < y[r - 1].time) throw ModelError("forward_filter: observations not sorted");

  // Observation window of slot i spans indices [window_begin[i],
  // window_begin[i+1]): times in [t_i, t_{i+1}), the last window closing at
  // the horizon inclusive.
  std::vector<std::size_t> window_begin(m + 2, y.size());
  {
    std::size_t r = 0;
    for (std::size_t i = 0; i <= m; ++i) {
      while (r < y.size() && y[r].time < grid.times[i]) ++r;
      window_begin[i] = r;
    }
    window_begin[m + 1] = y.size();
  }

  std::vector<Frontier> frontiers;
  frontiers.reserve(m + 1);

  Accumulator acc;
  acc.emplace_back(grid.states.front(), 1.0);
  apply_observations(acc, y, window_begin[0], window_begin[1]);
  frontiers.push_back(normalize(acc, 0));

  std::vector<Move> moves;
  for (std::size_t i = 1; i <= m; ++i) {
    const SlotRestriction& slot = restrictions[i - 1];
    acc.clear();
    for (const auto& [x, w] : frontiers[i - 1].weights) {
      model.outgoing(x, rates, moves);
      if (slot.allows_self()) {
        double exit = 0.0;
        for (const auto& mv : moves) exit += mv.rate;
        const double p_self = 1.0 - exit / omega;
        if (p_self > 0.0) {
          const double f = slot.from_z ? 1.0 : phi_label(no_observation(), cfg);
          if (f > 0.0) acc.emplace_back(x, w * p_self * f);
        }
      }
      for (const auto& mv : moves) {
        const JumpLabel lab = model.label(x, mv.target);
        if (slot.kind == SlotRestriction::Kind::label && !(lab == slot.label)) continue;
        const double f = slot.from_z ? 1.0 : phi_label(lab, cfg);
        if (f <= 0.0) continue;
        acc.emplace_back(mv.target, w * (mv.rate / omega) * f);
      }
    }
    merge_duplicates(acc);
    apply_observations(acc, y, window_begin[i], window_begin[i + 1]);
    frontiers.push_back(normalize(acc, i));
  }
  return frontiers;
}

UniformizedPath backward_sample(const std::vector<Frontier>& frontiers,
                                const UniformizedPath& grid,
                                const RestrictionSequence& restrictions,
                                const GeneratorModel& model, const RateParams& rates, double omega,
                                const SliceConfig& cfg, Rng& rng) {
  const std::size_t m = grid.transition_count();
  if (frontiers.size() != m + 1) throw ModelError("backward_sample: frontier count mismatch");

  UniformizedPath out;
  out.horizon = grid.horizon;
  out.times = grid.times;
  out.states.assign(m + 1, State{});

  std::vector<double> weights;
  std::vector<Move> scratch;
  {
    weights.clear();
    for (const auto& [state, w] : frontiers[m].weights) weights.push_back(w);
    out.states[m] = frontiers[m].weights[rng.categorical(weights)].first;
  }

  for (std::size_t i = m; i-- > 1;) {
    const State& next = out.states[i + 1];
    const SlotRestriction& slot = restrictions[i];  // slot i+1 (0-based storage)
    weights.clear();
    double total = 0.0;
    for (const auto& [x, alpha] : frontiers[i].weights) {
      const double w = slot_pair_weight(slot, x, next, model, rates, omega, cfg, scratch) * alpha;
      weights.push_back(w);
      total += w;
    }
    if (!(total > 0.0))
      throw ModelError("backward_sample: no admissible predecessor at slot " + std::to_string(i + 1));
    out.states[i] = frontiers[i].weights[rng.categorical(weights)].first;
  }
  out.states[0] = grid.states.front();
  if (m >= 1) {
    // consistency: the pair (x0, x1) must itself be admissible
    const double w0 =
        slot_pair_weight(restrictions[0], out.states[0], out.states[1], model, rates, omega, cfg, scratch);
    if (!(w0 > 0.0)) throw ModelError("backward_sample: initial pair inadmissible");
  }
  return out;
}

void AugmentStats::merge(const AugmentStats& other) {
  virtual_jumps += other.virtual_jumps;
  clamped_nodes += other.clamped_nodes;
  infeasible_retries += other.infeasible_retries;
  kept_current += other.kept_current;
  if (frontier_size_hist.size() < other.frontier_size_hist.size())
    frontier_size_hist.resize(other.frontier_size_hist.size(), 0);
  for (std::size_t i = 0; i < other.frontier_size_hist.size(); ++i)
    frontier_size_hist[i] += other.frontier_size_hist[i];
  max_frontier = std::max(max_frontier, other.max_frontier);
}

namespace {

void record_frontiers(const std::vector<Frontier>& frontiers, AugmentStats* stats) {
  if (!stats) return;
  for (const auto& f : frontiers) {
    const unsigned bucket = std::bit_width(f.size()) - 1;  // size>=1 always
    if (stats->frontier_size_hist.size() <= bucket) stats->frontier_size_hist.resize(bucket + 1, 0);
    ++stats->frontier_size_hist[bucket];
    stats->max_frontier = std::max(stats->max_frontier, static_cast<double>(f.size()));
  }
}

}  // namespace

bool path_matches_evidence(const MJPPath& path, const JumpObservationSet& z,
                           const GeneratorModel& model) {
  for (const auto& entry : z.entries) {
    auto it = std::lower_bound(path.times.begin(), path.times.end(), entry.time);
    if (it == path.times.end() || *it != entry.time) return false;
    const std::size_t i = static_cast<std::size_t>(it - path.times.begin());
    if (i == 0) return false;
    if (!(model.label(path.states[i - 1], path.states[i]) == entry.label)) return false;
  }
  return true;
}

MJPPath augment_step(const MJPPath& current, const std::vector<TimedObservation>& y,
                     const JumpObservationSet& z, const GeneratorModel& model,
                     const RateParams& rates, double omega, const SliceConfig& cfg,
                     std::size_t retry_limit, std::uint64_t call_seed, AugmentStats* stats) {
  if (!path_matches_evidence(current, z, model))
    throw ModelError("augment_step: current path disagrees with Z");

  Rng virt_rng(call_seed, {static_cast<std::uint64_t>(StreamTag::virtual_times)});
  const UniformizedPath grid = resample_virtual_times(current, omega, model, rates, virt_rng);
  if (stats) stats->virtual_jumps += grid.transition_count() - current.jump_count();

  for (std::size_t attempt = 0;; ++attempt) {
    Rng aux_rng(call_seed, {static_cast<std::uint64_t>(StreamTag::auxiliary), attempt});
    const AuxiliarySequence aux = sample_auxiliary(grid, model, cfg, aux_rng);
    if (stats)
      for (const auto& node : aux.nodes) stats->clamped_nodes += node.clamped ? 1 : 0;

    const RestrictionSequence restrictions = build_restrictions(
        std::vector<double>(grid.times.begin() + 1, grid.times.end()), aux, z, model);
    try {
      const auto frontiers = forward_filter(grid, restrictions, y, model, rates, omega, cfg);
      record_frontiers(frontiers, stats);
      Rng ffbs_rng(call_seed, {static_cast<std::uint64_t>(StreamTag::ffbs)});
      const UniformizedPath sampled =
          backward_sample(frontiers, grid, restrictions, model, rates, omega, cfg, ffbs_rng);
      return strip_virtual(sampled);
    } catch (const InfeasibleSliceError&) {
      if (stats) ++stats->infeasible_retries;
      if (attempt + 1 >= retry_limit) {
        if (stats) ++stats->kept_current;
        return current;
      }
    }
  }
}

MJPPath baseline_augment_step(const MJPPath& current, const std::vector<TimedObservation>& y,
                              const JumpObservationSet& z, const GeneratorModel& model,
                              const RateParams& rates, double omega, const SliceConfig& cfg,
                              std::uint64_t call_seed, AugmentStats* stats) {
  if (!path_matches_evidence(current, z, model))
    throw ModelError("baseline_augment_step: current path disagrees with Z");

  SliceConfig flat(0.0, cfg.default_q_z());
  for (const auto& [t, q] : cfg.tag_overrides()) flat.set_tag_q_z(t, q);

  Rng virt_rng(call_seed, {static_cast<std::uint64_t>(StreamTag::virtual_times)});
  const UniformizedPath grid = resample_virtual_times(current, omega, model, rates, virt_rng);
  if (stats) stats->virtual_jumps += grid.transition_count() - current.jump_count();

  AuxiliarySequence open_nodes;
  open_nodes.nodes.assign(grid.transition_count(), AuxiliaryNode::open());
  const RestrictionSequence restrictions = build_restrictions(
      std::vector<double>(grid.times.begin() + 1, grid.times.end()), open_nodes, z, model);

  const auto frontiers = forward_filter(grid, restrictions, y, model, rates, omega, flat);
  record_frontiers(frontiers, stats);
  Rng ffbs_rng(call_seed, {static_cast<std::uint64_t>(StreamTag::ffbs)});
  const UniformizedPath sampled =
      backward_sample(frontiers, grid, restrictions, model, rates, omega, flat, ffbs_rng);
  return strip_virtual(sampled);
}

}  // namespace mjps
