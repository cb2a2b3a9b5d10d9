#include "mjpslice/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mjpslice/gamma_math.hpp"

namespace mjps {

MembershipPrior MembershipPrior::uniform(std::size_t classes) {
  MembershipPrior prior;
  prior.probs.assign(classes, 1.0 / static_cast<double>(classes));
  return prior;
}

void MembershipPrior::validate() const {
  if (probs.empty()) throw InferenceError("membership prior: no classes");
  double total = 0.0;
  for (double p : probs) {
    if (!(p > 0.0)) throw InferenceError("membership prior: entries must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InferenceError("membership prior: must sum to 1");
}

RatePool rate_sufficient_pools(const std::vector<MJPPath>& paths,
                               const std::vector<int>& memberships, int l,
                               const std::string& name, const GeneratorModel& model,
                               const RateParams& rates) {
  const std::size_t idx = rates.index_of(name);
  RatePool pool;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (memberships[k] != l) continue;
    const SufficientStats stats = sufficient_statistics(paths[k], model, rates);
    pool.psi += static_cast<double>(stats.rate_match_counts[idx]);
    pool.tau += stats.rate_exposures[idx];
  }
  return pool;
}

namespace {

struct FreeRate {
  std::size_t cluster;
  std::size_t rate_index;
  double post_shape;  // a0 + psi
  double post_rate;   // b0 + tau
};

struct GroupConstraint {
  double scale;
  std::size_t lhs;  // indices into the FreeRate list
  std::size_t rhs;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

bool group_satisfied(const std::vector<double>& values, const std::vector<GroupConstraint>& cs) {
  for (const auto& c : cs)
    if (!(c.scale * values[c.lhs] < values[c.rhs])) return false;
  return true;
}

constexpr std::size_t kRejectionLimit = 200;

// Draw the rates of one constrained group. Joint rejection from the product
// of Gamma posteriors first; if that exhausts, one sweep of per-coordinate
// truncated inverse-CDF draws conditioned on the current values (a valid
// Gibbs move for the constrained joint).
void draw_group(const std::vector<FreeRate>& rates, const std::vector<std::size_t>& members,
                const std::vector<GroupConstraint>& cs, std::vector<double>& values, Rng& rng) {
  std::vector<double> proposal = values;
  for (std::size_t attempt = 0; attempt < kRejectionLimit; ++attempt) {
    for (std::size_t i : members)
      proposal[i] = rng.gamma(rates[i].post_shape, rates[i].post_rate);
    if (group_satisfied(proposal, cs)) {
      values = proposal;
      return;
    }
  }

  for (std::size_t i : members) {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& c : cs) {
      if (c.rhs == i) lo = std::max(lo, c.scale * values[c.lhs]);
      if (c.lhs == i) hi = std::min(hi, values[c.rhs] / c.scale);
    }
    const double u_lo = (lo > 0.0) ? gamma_cdf(lo, rates[i].post_shape, rates[i].post_rate) : 0.0;
    const double u_hi = std::isfinite(hi)
                            ? gamma_cdf(hi, rates[i].post_shape, rates[i].post_rate)
                            : 1.0;
    if (!(u_lo < u_hi))
      throw InferenceError("gibbs_rate_update: constraint truncation bounds cross");
    const double u = u_lo + (u_hi - u_lo) * rng.uniform();
    values[i] = gamma_quantile(std::min(u, 1.0 - 1e-16), rates[i].post_shape, rates[i].post_rate);
    if (!(values[i] > lo && values[i] < hi))
      values[i] = std::min(std::max(values[i], std::nextafter(lo, hi)), std::nextafter(hi, lo));
  }
}

std::vector<RateParams> update_all(const std::vector<RateParams>& current,
                                   const std::vector<std::map<std::string, RatePool>>& pools,
                                   const RatePrior& prior,
                                   const std::vector<OrderConstraint>& constraints, Rng& rng) {
  const std::size_t clusters = current.size();

  std::vector<FreeRate> free_rates;
  std::vector<double> values;
  auto slot_of = [&](std::size_t l, std::size_t idx) -> std::size_t {
    for (std::size_t s = 0; s < free_rates.size(); ++s)
      if (free_rates[s].cluster == l && free_rates[s].rate_index == idx) return s;
    throw InferenceError("gibbs_rate_update: constraint names a fixed or unknown rate");
  };

  for (std::size_t l = 0; l < clusters; ++l) {
    for (std::size_t idx = 0; idx < current[l].size(); ++idx) {
      if (current[l].fixed(idx)) continue;
      const std::string& name = current[l].name(idx);
      auto it = pools[l].find(name);
      const RatePool pool = (it == pools[l].end()) ? RatePool{} : it->second;
      const GammaPrior g = prior.get(name);
      if (!(g.shape > 0.0 && g.rate > 0.0))
        throw InferenceError("gibbs_rate_update: prior hyperparameters must be positive");
      free_rates.push_back({l, idx, g.shape + pool.psi, g.rate + pool.tau});
      values.push_back(current[l].value(idx));
    }
  }

  std::vector<GroupConstraint> group_cs;
  for (const auto& c : constraints) {
    if (c.lhs_cluster >= 0 || c.rhs_cluster >= 0) {
      const std::size_t lc = static_cast<std::size_t>(c.lhs_cluster < 0 ? 0 : c.lhs_cluster);
      const std::size_t rc = static_cast<std::size_t>(c.rhs_cluster < 0 ? 0 : c.rhs_cluster);
      if (lc >= clusters || rc >= clusters)
        throw InferenceError("gibbs_rate_update: constraint cluster index out of range");
      group_cs.push_back({c.scale, slot_of(lc, current[lc].index_of(c.lhs)),
                          slot_of(rc, current[rc].index_of(c.rhs))});
    } else {
      for (std::size_t l = 0; l < clusters; ++l)
        group_cs.push_back({c.scale, slot_of(l, current[l].index_of(c.lhs)),
                            slot_of(l, current[l].index_of(c.rhs))});
    }
  }

  // Union-find the constraint graph into independent groups.
  std::vector<std::size_t> parent(free_rates.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& c : group_cs) {
    const std::size_t a = find_root(parent, c.lhs);
    const std::size_t b = find_root(parent, c.rhs);
    parent[a] = b;
  }

  std::vector<bool> constrained(free_rates.size(), false);
  for (const auto& c : group_cs) constrained[c.lhs] = constrained[c.rhs] = true;

  for (std::size_t s = 0; s < free_rates.size(); ++s)
    if (!constrained[s]) values[s] = rng.gamma(free_rates[s].post_shape, free_rates[s].post_rate);

  std::vector<std::size_t> roots;
  for (std::size_t s = 0; s < free_rates.size(); ++s)
    if (constrained[s]) {
      const std::size_t r = find_root(parent, s);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
  for (std::size_t r : roots) {
    std::vector<std::size_t> members;
    for (std::size_t s = 0; s < free_rates.size(); ++s)
      if (constrained[s] && find_root(parent, s) == r) members.push_back(s);
    std::vector<GroupConstraint> cs;
    for (const auto& c : group_cs)
      if (find_root(parent, c.lhs) == r) cs.push_back(c);
    draw_group(free_rates, members, cs, values, rng);
  }

  std::vector<RateParams> out = current;
  for (std::size_t s = 0; s < free_rates.size(); ++s)
    out[free_rates[s].cluster].set_value(free_rates[s].rate_index, values[s]);
  return out;
}

}  // namespace

RateParams gibbs_rate_update(const RateParams& current,
                             const std::map<std::string, RatePool>& pools,
                             const RatePrior& prior,
                             const std::vector<OrderConstraint>& constraints, Rng& rng) {
  return update_all({current}, {pools}, prior, constraints, rng)[0];
}

std::vector<RateParams> gibbs_rates_update_all(
    const std::vector<RateParams>& current,
    const std::vector<std::map<std::string, RatePool>>& pools, const RatePrior& prior,
    const std::vector<OrderConstraint>& constraints, Rng& rng) {
  return update_all(current, pools, prior, constraints, rng);
}

RateParams posterior_mean_rates(const RateParams& current,
                                const std::map<std::string, RatePool>& pools,
                                const RatePrior& prior) {
  RateParams out = current;
  for (std::size_t idx = 0; idx < current.size(); ++idx) {
    if (current.fixed(idx)) continue;
    const std::string& name = current.name(idx);
    auto it = pools.find(name);
    const RatePool pool = (it == pools.end()) ? RatePool{} : it->second;
    const GammaPrior g = prior.get(name);
    out.set_value(idx, (g.shape + pool.psi) / (g.rate + pool.tau));
  }
  return out;
}

std::vector<int> gibbs_membership_update(const std::vector<MJPPath>& paths,
                                         const std::vector<RateParams>& cluster_rates,
                                         const MembershipPrior& prior,
                                         const GeneratorModel& model, Rng& rng) {
  prior.validate();
  const std::size_t classes = cluster_rates.size();
  if (prior.probs.size() != classes)
    throw InferenceError("gibbs_membership_update: prior/class count mismatch");

  std::vector<int> memberships(paths.size(), 0);
  std::vector<double> logw(classes), w(classes);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < classes; ++c) {
      logw[c] = path_log_density(paths[k], model, cluster_rates[c]) + std::log(prior.probs[c]);
      best = std::max(best, logw[c]);
    }
    if (best == -std::numeric_limits<double>::infinity())
      throw InferenceError("gibbs_membership_update: zero density under every class for process " +
                           std::to_string(k));
    for (std::size_t c = 0; c < classes; ++c) w[c] = std::exp(logw[c] - best);
    memberships[k] = static_cast<int>(rng.categorical(w));
  }
  return memberships;
}

}  // namespace mjps
