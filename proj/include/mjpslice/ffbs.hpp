#ifndef MJPSLICE_FFBS_HPP
#define MJPSLICE_FFBS_HPP

#include <cstdint>
#include <vector>

#include "mjpslice/slice.hpp"
#include "mjpslice/uniformization.hpp"

namespace mjps {

// Restriction on the state pair of one uniformized transition: everything,
// or the preimage of a single effective label (the intersection of the Z
// label and the clamped label, when both are present). A label restriction
// with the empty label admits self-transitions plus real transitions the map
// leaves unobserved.
struct SlotRestriction {
  enum class Kind { all_pairs, label } kind = Kind::all_pairs;
  JumpLabel label;
  bool from_z = false;  // pinned by a real Z entry: the constant retrieval factor cancels

  static SlotRestriction all() { return {}; }
  static SlotRestriction with_label(const JumpLabel& l, bool z) {
    return {Kind::label, l, z};
  }
  bool allows_self() const {
    return kind == Kind::all_pairs || label.empty();
  }
};

using RestrictionSequence = std::vector<SlotRestriction>;

// Normalized filtered weights over a finite dynamic frontier, sorted by state
// so accumulation and sampling order are reproducible.
struct Frontier {
  std::vector<std::pair<State, double>> weights;

  double weight_of(const State& x) const;
  std::size_t size() const { return weights.size(); }
};

// Intersect clamped auxiliary labels with retrieved jump observations. Every
// Z time must coincide with a transition time of the grid (real jumps are
// retained by resample_virtual_times); a clamp disagreeing with a Z label at
// the same slot is an empty restriction and throws ModelError.
RestrictionSequence build_restrictions(const std::vector<double>& transition_times,
                                       const AuxiliarySequence& aux, const JumpObservationSet& z,
                                       const GeneratorModel& model);

// Restricted forward filter over the dynamic frontier. Returns m+1 frontiers;
// frontier i carries the timed-observation factors of [t_i, t_{i+1}) (the
// last window closes at the horizon, inclusive). Throws InfeasibleSliceError
// with the failing slot when a frontier empties.
std::vector<Frontier> forward_filter(const UniformizedPath& grid,
                                     const RestrictionSequence& restrictions,
                                     const std::vector<TimedObservation>& y,
                                     const GeneratorModel& model, const RateParams& rates,
                                     double omega, const SliceConfig& cfg);

// Backward draw through the stored frontiers; the returned path reuses the
// grid times with freshly sampled states. Every consecutive pair respects its
// slot restriction.
UniformizedPath backward_sample(const std::vector<Frontier>& frontiers,
                                const UniformizedPath& grid,
                                const RestrictionSequence& restrictions,
                                const GeneratorModel& model, const RateParams& rates, double omega,
                                const SliceConfig& cfg, Rng& rng);

// Counters reported by the augmentation step.
struct AugmentStats {
  std::size_t virtual_jumps = 0;
  std::size_t clamped_nodes = 0;
  std::size_t infeasible_retries = 0;
  std::size_t kept_current = 0;
  // Bucket b counts frontiers of size in (2^(b-1), 2^b]; bucket 0 is size 1.
  std::vector<std::size_t> frontier_size_hist;
  double max_frontier = 0.0;

  void merge(const AugmentStats& other);
};

// One full path-augmentation sweep: resample virtual times, draw auxiliaries,
// restrict, filter, sample backward, strip. Infeasible slices retry with
// fresh auxiliaries up to retry_limit, then keep the current path. All
// randomness derives from call_seed through fixed substream tags.
MJPPath augment_step(const MJPPath& current, const std::vector<TimedObservation>& y,
                     const JumpObservationSet& z, const GeneratorModel& model,
                     const RateParams& rates, double omega, const SliceConfig& cfg,
                     std::size_t retry_limit, std::uint64_t call_seed, AugmentStats* stats);

// Auxiliary-free reference sampler: identical grid and FFBS machinery with
// restrictions built from Z alone. Shares the virtual-time and FFBS
// substreams with augment_step, so augment_step at p = 0 reproduces it
// exactly under the same call_seed.
MJPPath baseline_augment_step(const MJPPath& current, const std::vector<TimedObservation>& y,
                              const JumpObservationSet& z, const GeneratorModel& model,
                              const RateParams& rates, double omega, const SliceConfig& cfg,
                              std::uint64_t call_seed, AugmentStats* stats);

// True iff every Z entry sits on a real jump of the path with the same label.
bool path_matches_evidence(const MJPPath& path, const JumpObservationSet& z,
                           const GeneratorModel& model);

}  // namespace mjps

#endif
