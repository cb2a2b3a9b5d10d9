#ifndef MJPSLICE_SLICE_HPP
#define MJPSLICE_SLICE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mjpslice/label.hpp"
#include "mjpslice/observation.hpp"
#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// Slice parameters: the clamp weight p and the jump-retrieval probability,
// optionally per label tag (a fully observed channel has q_z = 1; its jumps
// always appear in Z and its auxiliary node is degenerate).
//
// Validity: p >= 0 always; p > 0 additionally requires p < 1 - q_z(j) for
// every channel with q_z(j) < 1, so the clamp probability p / (1 - q_z)
// stays below 1.
class SliceConfig {
 public:
  SliceConfig() = default;
  SliceConfig(double p, double default_q_z);

  void set_tag_q_z(std::int32_t tag, double q_z);

  double p() const { return p_; }
  double q_z(const JumpLabel& lab) const;
  double default_q_z() const { return default_q_z_; }
  const std::map<std::int32_t, double>& tag_overrides() const { return tag_q_z_; }

  // Probability that the auxiliary node of a transition labeled `lab` is
  // clamped; 0 on fully observed channels.
  double clamp_prob(const JumpLabel& lab) const;

  void validate() const;

 private:
  double p_ = 0.0;
  double default_q_z_ = 0.0;
  std::map<std::int32_t, double> tag_q_z_;
};

// Per-transition auxiliary node u_i: clamped to the singleton {label}, or the
// full alphabet.
struct AuxiliaryNode {
  bool clamped = false;
  JumpLabel label;

  static AuxiliaryNode open() { return {}; }
  static AuxiliaryNode clamp(const JumpLabel& l) { return {true, l}; }
};

// One node per uniformized transition i = 1..m.
struct AuxiliarySequence {
  std::vector<AuxiliaryNode> nodes;
};

// Draw u | x-hat: transition i is clamped to its own label with probability
// clamp_prob(label), else open. Independent across transitions.
AuxiliarySequence sample_auxiliary(const UniformizedPath& upath, const GeneratorModel& model,
                                   const SliceConfig& cfg, Rng& rng);

// Penalty for an unobserved transition: the probability that the pair (x, x')
// leaves no Z record and an open node, (1 - q_z)^{I(label != none)} - p in the
// uniform case. Zero exactly for fully observed labels, which cannot occur
// off a Z slot.
double phi(const State& x, const State& x_next, const GeneratorModel& model,
           const SliceConfig& cfg);
double phi_label(const JumpLabel& lab, const SliceConfig& cfg);

}  // namespace mjps

#endif
