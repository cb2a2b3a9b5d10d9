#include "mjpslice/mcmc.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "mjpslice/clustering.hpp"

namespace mjps {

std::string trace_rate_name(const std::string& rate, std::size_t cluster, std::size_t clusters) {
  if (clusters == 1) return rate;
  return rate + "@" + std::to_string(cluster);
}

std::vector<double> McmcTrace::rate_trace(std::size_t chain, const std::string& name) const {
  std::size_t idx = rate_names.size();
  for (std::size_t i = 0; i < rate_names.size(); ++i)
    if (rate_names[i] == name) idx = i;
  if (idx == rate_names.size()) throw InferenceError("rate_trace: unknown name " + name);
  std::vector<double> out;
  out.reserve(rates[chain].size());
  for (const auto& row : rates[chain]) out.push_back(row[idx]);
  return out;
}

double McmcTrace::total_augment_seconds() const {
  double total = 0.0;
  for (const auto& chain : augment_seconds)
    for (double s : chain) total += s;
  return total;
}

MJPPath thread_evidence(const GeneratorModel& model, const RateParams& rates,
                        const JumpObservationSet& z, const SliceConfig& cfg, double horizon) {
  validate_jump_observations(z);
  MJPPath path;
  path.horizon = horizon;
  path.times.push_back(0.0);
  path.states.push_back(model.initial_state());

  State cur = model.initial_state();
  double t_prev = 0.0;
  std::vector<Move> moves;

  for (const auto& entry : z.entries) {
    if (!(entry.time > t_prev) || entry.time > horizon)
      throw ConfigError("thread_evidence: Z times must be strictly increasing within the horizon");

    // BFS to the nearest state that can emit this label, stepping only over
    // connector moves that may go unobserved (q_z < 1).
    std::unordered_map<State, State, StateHash> parent;
    std::deque<State> queue;
    queue.push_back(cur);
    parent.emplace(cur, cur);
    State emitter;
    bool found = false;
    while (!queue.empty() && !found) {
      const State x = queue.front();
      queue.pop_front();
      model.outgoing(x, rates, moves);
      for (const auto& m : moves) {
        if (model.label(x, m.target) == entry.label) {
          emitter = x;
          found = true;
          break;
        }
      }
      if (found) break;
      for (const auto& m : moves) {
        const JumpLabel lab = model.label(x, m.target);
        if (!lab.empty() && cfg.q_z(lab) >= 1.0) continue;
        if (parent.count(m.target)) continue;
        parent.emplace(m.target, x);
        queue.push_back(m.target);
      }
      if (parent.size() > 200000)
        throw ConfigError("thread_evidence: no label-consistent connection found for " +
                          label_str(entry.label));
    }
    if (!found)
      throw ConfigError("thread_evidence: label " + label_str(entry.label) +
                        " unreachable from " + cur.str());

    std::vector<State> chain;
    for (State s = emitter; !(s == cur); s = parent.at(s)) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());

    const double step = (entry.time - t_prev) / static_cast<double>(chain.size() + 1);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      path.times.push_back(t_prev + step * static_cast<double>(i + 1));
      path.states.push_back(chain[i]);
    }

    model.outgoing(emitter, rates, moves);
    State target;
    bool have_target = false;
    for (const auto& m : moves) {
      if (model.label(emitter, m.target) == entry.label) {
        target = m.target;
        have_target = true;
        break;
      }
    }
    if (!have_target) throw ConfigError("thread_evidence: emitter lost its labeled move");
    path.times.push_back(entry.time);
    path.states.push_back(target);
    cur = target;
    t_prev = entry.time;
  }
  return path;
}

namespace {

double current_omega(const GeneratorModel& model, const std::vector<RateParams>& cluster_rates,
                     double scale) {
  double bound = 0.0;
  for (const auto& rates : cluster_rates) bound = std::max(bound, model.rate_bound(rates));
  return scale * bound;
}

std::uint64_t augment_call_seed(std::uint64_t seed, std::uint64_t chain, std::uint64_t iteration,
                                std::uint64_t k) {
  return derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::augment), chain, iteration, k});
}

}  // namespace

void augment_sweep_serial(std::vector<MJPPath>& paths, const std::vector<ProcessData>& data,
                          const GeneratorModel& model,
                          const std::vector<RateParams>& cluster_rates,
                          const std::vector<int>& memberships, double omega,
                          const SliceConfig& cfg, std::size_t retry_limit, std::uint64_t seed,
                          std::uint64_t chain, std::uint64_t iteration, AugmentStats* stats) {
  for (std::size_t k = 0; k < paths.size(); ++k) {
    AugmentStats local;
    paths[k] = augment_step(paths[k], data[k].y, data[k].z, model, cluster_rates[memberships[k]],
                            omega, cfg, retry_limit, augment_call_seed(seed, chain, iteration, k),
                            stats ? &local : nullptr);
    if (stats) stats->merge(local);
  }
}

void augment_sweep_parallel(std::vector<MJPPath>& paths, const std::vector<ProcessData>& data,
                            const GeneratorModel& model,
                            const std::vector<RateParams>& cluster_rates,
                            const std::vector<int>& memberships, double omega,
                            const SliceConfig& cfg, std::size_t retry_limit, std::uint64_t seed,
                            std::uint64_t chain, std::uint64_t iteration, AugmentStats* stats,
                            int threads) {
  const std::size_t n = paths.size();
  std::vector<AugmentStats> locals(stats ? n : 0);
  // exceptions may not escape the parallel region; capture and rethrow after
  std::vector<std::exception_ptr> failures(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (std::size_t k = 0; k < n; ++k) {
    try {
      paths[k] = augment_step(paths[k], data[k].y, data[k].z, model,
                              cluster_rates[memberships[k]], omega, cfg, retry_limit,
                              augment_call_seed(seed, chain, iteration, k),
                              stats ? &locals[k] : nullptr);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (failures[k]) std::rethrow_exception(failures[k]);
  if (stats)
    for (const auto& local : locals) stats->merge(local);
}

namespace {

// Centroid step used when assign != gibbs: cluster standardized statistic
// vectors, relabel clusters by the posterior-mean of the first free rate (the
// order-constrained family when constraints exist), and plug in cluster
// posterior means as the next rates.
void centroid_update(const GeneratorModel& model, const std::vector<MJPPath>& paths,
                     std::vector<int>& memberships, std::vector<RateParams>& cluster_rates,
                     const McmcOptions& options, AssignMethod method, Rng& rng) {
  const std::size_t L = options.clusters;
  std::vector<std::vector<double>> points;
  points.reserve(paths.size());
  for (const auto& path : paths) points.push_back(stat_vector(path, model, cluster_rates[0]));
  const auto standardized = standardize(points);

  ClusterResult result = (method == AssignMethod::kmeans) ? kmeans(standardized, L, rng)
                                                          : pam(standardized, L, rng);

  // Pool statistics per cluster and compute posterior-mean rates.
  std::vector<RateParams> means;
  for (std::size_t l = 0; l < L; ++l) {
    std::map<std::string, RatePool> pools;
    for (const auto& name : cluster_rates[l].free_names())
      pools[name] = rate_sufficient_pools(paths, result.assignments, static_cast<int>(l), name,
                                          model, cluster_rates[l]);
    means.push_back(posterior_mean_rates(cluster_rates[l], pools, options.prior));
  }

  // Relabel so the ordering rate increases with the cluster index.
  std::string order_rate;
  for (const auto& c : options.constraints)
    if (c.lhs == c.rhs) order_rate = c.lhs;
  if (order_rate.empty()) {
    const auto free = cluster_rates[0].free_names();
    if (!free.empty()) order_rate = free[0];
  }
  std::vector<std::size_t> order(L);
  for (std::size_t l = 0; l < L; ++l) order[l] = l;
  if (!order_rate.empty())
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return means[a].value(order_rate) < means[b].value(order_rate);
    });

  std::vector<int> relabel(L);
  for (std::size_t pos = 0; pos < L; ++pos) relabel[order[pos]] = static_cast<int>(pos);
  for (auto& c : result.assignments) c = relabel[c];
  for (std::size_t l = 0; l < L; ++l) cluster_rates[relabel[l]] = means[l];
  memberships = result.assignments;
}

}  // namespace

McmcTrace run_mcmc(const GeneratorModel& model, const std::vector<ProcessData>& data,
                   const McmcOptions& options) {
  if (data.empty()) throw ConfigError("run_mcmc: no processes");
  if (options.burn_in > options.iterations)
    throw ConfigError("run_mcmc: burn_in exceeds iterations");
  if (options.thin < 1) throw ConfigError("run_mcmc: thin must be >= 1");
  options.slice.validate();

  const std::size_t L = options.clusters;
  const std::size_t K = data.size();
  MembershipPrior membership_prior =
      options.membership_prior.probs.empty() ? MembershipPrior::uniform(L)
                                             : options.membership_prior;
  membership_prior.validate();

  McmcTrace trace;
  const RateParams schema = model.make_rates();
  for (std::size_t l = 0; l < L; ++l)
    for (const auto& name : schema.free_names())
      trace.rate_names.push_back(trace_rate_name(name, l, L));

  trace.rates.resize(options.chains);
  trace.memberships.resize(options.chains);
  trace.augment_seconds.resize(options.chains);
  trace.final_paths.resize(options.chains);
  trace.final_rates.resize(options.chains);

  for (std::size_t chain = 0; chain < options.chains; ++chain) {
    Rng init_rng(options.seed, {static_cast<std::uint64_t>(StreamTag::init), chain});

    // Rates start at a prior draw honoring the constraints (empty pools make
    // the conjugate update a prior draw).
    std::vector<RateParams> cluster_rates(L, schema);
    std::vector<std::map<std::string, RatePool>> empty_pools(L);
    cluster_rates = gibbs_rates_update_all(cluster_rates, empty_pools, options.prior,
                                           options.constraints, init_rng);

    std::vector<int> memberships(K, 0);
    if (L > 1)
      for (auto& c : memberships) c = static_cast<int>(init_rng.uniform_int(L));

    std::vector<MJPPath> paths;
    paths.reserve(K);
    for (std::size_t k = 0; k < K; ++k)
      paths.push_back(thread_evidence(model, cluster_rates[memberships[k]], data[k].z,
                                      options.slice, data[k].horizon));

    auto record = [&](std::size_t) {
      std::vector<double> row;
      row.reserve(trace.rate_names.size());
      for (std::size_t l = 0; l < L; ++l)
        for (const auto& name : schema.free_names()) row.push_back(cluster_rates[l].value(name));
      trace.rates[chain].push_back(std::move(row));
      trace.memberships[chain].push_back(memberships);
    };

    if (options.burn_in == 0) record(0);
    if (chain == 0 && options.burn_in == 0) trace.kept_iters.push_back(0);

    for (std::size_t t = 1; t <= options.iterations; ++t) {
      const double omega = current_omega(model, cluster_rates, options.omega_scale);

      const auto start = std::chrono::steady_clock::now();
      try {
        if (options.threads == 0)
          augment_sweep_serial(paths, data, model, cluster_rates, memberships, omega,
                               options.slice, options.retry_limit, options.seed, chain, t,
                               &trace.stats);
        else
          augment_sweep_parallel(paths, data, model, cluster_rates, memberships, omega,
                                 options.slice, options.retry_limit, options.seed, chain, t,
                                 &trace.stats, options.threads);
      } catch (const std::exception& err) {
        throw InferenceError("augmentation sweep failed at iteration " + std::to_string(t) +
                             ", chain " + std::to_string(chain) + ": " + err.what());
      }
      const auto stop = std::chrono::steady_clock::now();
      trace.augment_seconds[chain].push_back(std::chrono::duration<double>(stop - start).count());

      for (std::size_t k = 0; k < K; ++k)
        if (!path_matches_evidence(paths[k], data[k].z, model))
          throw InferenceError("run_mcmc: augmented path lost evidence at iteration " +
                               std::to_string(t) + ", process " + std::to_string(k));

      if (options.assign == AssignMethod::gibbs) {
        if (L > 1) {
          Rng member_rng(options.seed,
                         {static_cast<std::uint64_t>(StreamTag::memberships), chain, t});
          memberships =
              gibbs_membership_update(paths, cluster_rates, membership_prior, model, member_rng);
        }
        std::vector<std::map<std::string, RatePool>> pools(L);
        for (std::size_t l = 0; l < L; ++l)
          for (const auto& name : schema.free_names())
            pools[l][name] = rate_sufficient_pools(paths, memberships, static_cast<int>(l), name,
                                                   model, cluster_rates[l]);
        Rng rate_rng(options.seed, {static_cast<std::uint64_t>(StreamTag::rates), chain, t});
        cluster_rates = gibbs_rates_update_all(cluster_rates, pools, options.prior,
                                               options.constraints, rate_rng);
      } else {
        Rng cluster_rng(options.seed, {static_cast<std::uint64_t>(StreamTag::cluster), chain, t});
        centroid_update(model, paths, memberships, cluster_rates, options, options.assign,
                        cluster_rng);
      }

      if (t >= options.burn_in && (t - options.burn_in) % options.thin == 0) {
        record(t);
        if (chain == 0) trace.kept_iters.push_back(t);
      }
    }

    trace.final_paths[chain] = std::move(paths);
    trace.final_rates[chain] = cluster_rates;
  }
  return trace;
}

}  // namespace mjps
