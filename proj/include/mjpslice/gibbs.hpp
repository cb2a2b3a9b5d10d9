#ifndef MJPSLICE_GIBBS_HPP
#define MJPSLICE_GIBBS_HPP

#include <map>
#include <string>
#include <vector>

#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// Gamma(shape a0, rate b0) prior per rate name. Defaults give the
// uninformative exponential prior.
struct GammaPrior {
  double shape = 1.0;
  double rate = 0.01;
};

class RatePrior {
 public:
  void set(const std::string& name, GammaPrior prior) { priors_[name] = prior; }
  GammaPrior get(const std::string& name) const {
    auto it = priors_.find(name);
    return it == priors_.end() ? GammaPrior{} : it->second;
  }

 private:
  std::map<std::string, GammaPrior> priors_;
};

struct MembershipPrior {
  std::vector<double> probs;  // one entry per class, positive, sums to 1

  static MembershipPrior uniform(std::size_t classes);
  void validate() const;
};

// (psi, tau) pool for one named rate: total pattern-matched transition count
// and total weighted exposure.
struct RatePool {
  double psi = 0.0;
  double tau = 0.0;
};

// Pool psi and tau for rate `name` over the paths assigned to cluster l.
RatePool rate_sufficient_pools(const std::vector<MJPPath>& paths,
                               const std::vector<int>& memberships, int l,
                               const std::string& name, const GeneratorModel& model,
                               const RateParams& rates);

// Conjugate update of one cluster's free rates given pooled statistics:
// unconstrained rates draw Gamma(a0 + psi, b0 + tau); constrained groups draw
// jointly by rejection with a truncated inverse-CDF fallback. Cross-cluster
// constraints are ignored here (see gibbs_rates_update_all).
RateParams gibbs_rate_update(const RateParams& current,
                             const std::map<std::string, RatePool>& pools,
                             const RatePrior& prior,
                             const std::vector<OrderConstraint>& constraints, Rng& rng);

// Joint update of every cluster's rates honoring constraints that span
// clusters (e.g. an across-cluster order on one rate family).
std::vector<RateParams> gibbs_rates_update_all(
    const std::vector<RateParams>& current,
    const std::vector<std::map<std::string, RatePool>>& pools, const RatePrior& prior,
    const std::vector<OrderConstraint>& constraints, Rng& rng);

// Posterior-mean plug-in instead of a draw; used by the centroid clustering
// loop. Constraints are not enforced (callers relabel by the constrained
// order instead).
RateParams posterior_mean_rates(const RateParams& current,
                                const std::map<std::string, RatePool>& pools,
                                const RatePrior& prior);

// Categorical membership draw per process: log-weights are the path log
// density under each cluster's rates plus the log prior, stabilized by
// max-subtraction.
std::vector<int> gibbs_membership_update(const std::vector<MJPPath>& paths,
                                         const std::vector<RateParams>& cluster_rates,
                                         const MembershipPrior& prior,
                                         const GeneratorModel& model, Rng& rng);

}  // namespace mjps

#endif
