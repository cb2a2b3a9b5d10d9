#include "mjpslice/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mjpslice/errors.hpp"

namespace mjps {

std::vector<double> stat_vector(const MJPPath& path, const GeneratorModel& model,
                                const RateParams& rates) {
  const SufficientStats stats = sufficient_statistics(path, model, rates);
  std::vector<double> out;
  for (std::size_t i = 0; i < rates.size(); ++i)
    if (!rates.fixed(i)) out.push_back(static_cast<double>(stats.rate_match_counts[i]));
  for (std::size_t i = 0; i < rates.size(); ++i)
    if (!rates.fixed(i)) out.push_back(stats.rate_exposures[i]);
  return out;
}

std::vector<std::vector<double>> standardize(const std::vector<std::vector<double>>& points) {
  if (points.empty()) return {};
  const std::size_t dim = points[0].size();
  const double n = static_cast<double>(points.size());
  std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
  for (const auto& p : points)
    for (std::size_t j = 0; j < dim; ++j) mean[j] += p[j] / n;
  for (const auto& p : points)
    for (std::size_t j = 0; j < dim; ++j) sd[j] += (p[j] - mean[j]) * (p[j] - mean[j]) / n;
  for (std::size_t j = 0; j < dim; ++j) sd[j] = std::sqrt(sd[j]);

  std::vector<std::vector<double>> out = points;
  for (auto& p : out)
    for (std::size_t j = 0; j < dim; ++j)
      p[j] = sd[j] > 0.0 ? (p[j] - mean[j]) / sd[j] : p[j] - mean[j];
  return out;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
  return d;
}

void assign_nearest(const std::vector<std::vector<double>>& points,
                    const std::vector<std::vector<double>>& centers, std::vector<int>& assignments,
                    double& objective) {
  objective = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = sq_dist(points[i], centers[c]);
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    assignments[i] = best_c;
    objective += best;
  }
}

// Distinct random starting indices.
std::vector<std::size_t> pick_initial(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  return all;
}

}  // namespace

ClusterResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, Rng& rng,
                     std::size_t max_iters) {
  if (k < 1 || points.size() < k) throw InferenceError("kmeans: need 1 <= k <= point count");
  const std::size_t n = points.size();
  const std::size_t dim = points[0].size();

  ClusterResult result;
  result.assignments.assign(n, 0);
  for (std::size_t idx : pick_initial(n, k, rng)) result.centers.push_back(points[idx]);

  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    assign_nearest(points, result.centers, result.assignments, result.objective);
    if (result.objective > prev * (1.0 + 1e-12))
      throw InferenceError("kmeans: objective increased");
    if (result.objective >= prev) break;
    prev = result.objective;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = result.assignments[i];
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) sums[c][j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // reseed the empty cluster from the point farthest from its center
        double worst = -1.0;
        std::size_t worst_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = sq_dist(points[i], result.centers[result.assignments[i]]);
          if (d > worst) {
            worst = d;
            worst_i = i;
          }
        }
        result.centers[c] = points[worst_i];
        prev = std::numeric_limits<double>::infinity();
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j) result.centers[c][j] = sums[c][j] / counts[c];
    }
  }
  assign_nearest(points, result.centers, result.assignments, result.objective);
  return result;
}

ClusterResult pam(const std::vector<std::vector<double>>& points, std::size_t k, Rng& rng,
                  std::size_t max_iters) {
  (void)rng;  // BUILD is deterministic; the seed only matters for k-means
  if (k < 1 || points.size() < k) throw InferenceError("pam: need 1 <= k <= point count");
  const std::size_t n = points.size();

  auto objective_of = [&](const std::vector<int>& medoids) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int m : medoids) best = std::min(best, sq_dist(points[i], points[m]));
      total += best;
    }
    return total;
  };

  // BUILD: greedily add the medoid that lowers the objective most.
  std::vector<int> medoids;
  std::vector<bool> is_medoid(n, false);
  for (std::size_t step = 0; step < k; ++step) {
    double best_obj = std::numeric_limits<double>::infinity();
    int best_i = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      medoids.push_back(static_cast<int>(i));
      const double obj = objective_of(medoids);
      medoids.pop_back();
      if (obj < best_obj) {
        best_obj = obj;
        best_i = static_cast<int>(i);
      }
    }
    medoids.push_back(best_i);
    is_medoid[best_i] = true;
  }

  // SWAP until no improving exchange remains.
  double current = objective_of(medoids);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    double best_obj = current;
    int swap_m = -1, swap_i = -1;
    for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
      for (std::size_t i = 0; i < n; ++i) {
        if (is_medoid[i]) continue;
        const int old = medoids[mi];
        medoids[mi] = static_cast<int>(i);
        const double obj = objective_of(medoids);
        medoids[mi] = old;
        if (obj < best_obj) {
          best_obj = obj;
          swap_m = static_cast<int>(mi);
          swap_i = static_cast<int>(i);
        }
      }
    }
    if (swap_m < 0) break;
    is_medoid[medoids[swap_m]] = false;
    medoids[swap_m] = swap_i;
    is_medoid[swap_i] = true;
    if (best_obj > current * (1.0 + 1e-12)) throw InferenceError("pam: objective increased");
    current = best_obj;
  }

  ClusterResult result;
  result.medoid_indices = medoids;
  for (int m : medoids) result.centers.push_back(points[m]);
  result.assignments.assign(n, 0);
  assign_nearest(points, result.centers, result.assignments, result.objective);
  return result;
}

std::vector<double> f1_scores(const std::vector<int>& assignments, const std::vector<int>& truth,
                              std::size_t classes) {
  if (assignments.size() != truth.size()) throw InferenceError("f1_scores: size mismatch");
  std::vector<double> out(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool in_pred = assignments[i] == static_cast<int>(c);
      const bool in_true = truth[i] == static_cast<int>(c);
      tp += in_pred && in_true;
      fp += in_pred && !in_true;
      fn += !in_pred && in_true;
    }
    const double denom = 2.0 * tp + fp + fn;
    out[c] = denom > 0.0 ? 2.0 * tp / denom : 0.0;
  }
  return out;
}

double best_permutation_accuracy(const std::vector<int>& assignments,
                                 const std::vector<int>& truth, std::size_t classes) {
  std::vector<int> perm(classes);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
      if (perm[assignments[i]] == truth[i]) ++hits;
    best = std::max(best, static_cast<double>(hits) / truth.size());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace mjps
