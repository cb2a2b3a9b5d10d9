#include "mjpslice/slice.hpp"

#include <cmath>

namespace mjps {

SliceConfig::SliceConfig(double p, double default_q_z) : p_(p), default_q_z_(default_q_z) {
  validate();
}

void SliceConfig::set_tag_q_z(std::int32_t tag, double q_z) {
  if (tag == tag::none) throw ConfigError("q_z override for the no-observation tag");
  tag_q_z_[tag] = q_z;
  validate();
}

double SliceConfig::q_z(const JumpLabel& lab) const {
  if (lab.empty()) return 0.0;
  auto it = tag_q_z_.find(lab.tag);
  return it == tag_q_z_.end() ? default_q_z_ : it->second;
}

double SliceConfig::clamp_prob(const JumpLabel& lab) const {
  if (lab.empty()) return p_;
  const double q = q_z(lab);
  if (q >= 1.0) return 0.0;  // degenerate channel: every jump is in Z already
  return p_ / (1.0 - q);
}

void SliceConfig::validate() const {
  auto check_q = [](double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q_z must lie in [0, 1]");
  };
  check_q(default_q_z_);
  for (const auto& [t, q] : tag_q_z_) check_q(q);
  if (!(p_ >= 0.0)) throw ConfigError("p must be nonnegative");
  if (p_ == 0.0) return;
  if (!(p_ < 1.0)) throw ConfigError("p must be below 1");
  bool any_unobserved_channel = default_q_z_ < 1.0;
  if (default_q_z_ < 1.0 && !(p_ < 1.0 - default_q_z_))
    throw ConfigError("p must lie in [0, 1 - q_z)");
  for (const auto& [t, q] : tag_q_z_) {
    any_unobserved_channel = any_unobserved_channel || q < 1.0;
    if (q < 1.0 && !(p_ < 1.0 - q))
      throw ConfigError("p must lie in [0, 1 - q_z) for tag " + tag_name(t));
  }
  // q_z = 1 everywhere degenerates the clamp law; only p = 0 remains valid
  if (!any_unobserved_channel)
    throw ConfigError("p must be 0 when every channel is fully observed (q_z = 1)");
}

AuxiliarySequence sample_auxiliary(const UniformizedPath& upath, const GeneratorModel& model,
                                   const SliceConfig& cfg, Rng& rng) {
  AuxiliarySequence aux;
  const std::size_t m = upath.transition_count();
  aux.nodes.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const JumpLabel lab = model.label(upath.states[i - 1], upath.states[i]);
    const double prob = cfg.clamp_prob(lab);
    // Consume one uniform per node regardless of prob, for stream stability.
    const bool clamp = rng.bernoulli(prob);
    aux.nodes.push_back(clamp ? AuxiliaryNode::clamp(lab) : AuxiliaryNode::open());
  }
  return aux;
}

double phi_label(const JumpLabel& lab, const SliceConfig& cfg) {
  if (lab.empty()) return 1.0 - cfg.p();
  const double q = cfg.q_z(lab);
  // P(no Z record) * P(open node) -- equals (1-q)^1 - p when q < 1, and 0 on
  // fully observed channels.
  return (1.0 - q) * (1.0 - cfg.clamp_prob(lab));
}

double phi(const State& x, const State& x_next, const GeneratorModel& model,
           const SliceConfig& cfg) {
  return phi_label(model.label(x, x_next), cfg);
}

}  // namespace mjps
