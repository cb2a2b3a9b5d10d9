#ifndef MJPSLICE_CLUSTERING_HPP
#define MJPSLICE_CLUSTERING_HPP

#include <vector>

#include "mjpslice/path.hpp"
#include "mjpslice/rng.hpp"

namespace mjps {

// Model-declared sufficient statistic vector T(X): the pattern-match counts
// followed by the weighted exposures of every free rate.
std::vector<double> stat_vector(const MJPPath& path, const GeneratorModel& model,
                                const RateParams& rates);

// Per-coordinate z-scores; constant coordinates pass through unscaled.
std::vector<std::vector<double>> standardize(const std::vector<std::vector<double>>& points);

struct ClusterResult {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centers;  // centroids, or medoid coordinates for PAM
  std::vector<int> medoid_indices;           // PAM only, empty for k-means
  double objective = 0.0;                    // sum of squared distances to centers
};

// Lloyd iterations from a seeded start; empty clusters reseed from the point
// farthest from its center. The objective never increases.
ClusterResult kmeans(const std::vector<std::vector<double>>& points, std::size_t k, Rng& rng,
                     std::size_t max_iters = 100);

// Partitioning around medoids (BUILD + SWAP) under the same squared-distance
// objective; medoids are data points.
ClusterResult pam(const std::vector<std::vector<double>>& points, std::size_t k, Rng& rng,
                  std::size_t max_iters = 100);

// Per-class F1 against ground truth; classes are compared as-is (callers
// align labels first when the labeling is arbitrary). Undefined F1 is 0.
std::vector<double> f1_scores(const std::vector<int>& assignments, const std::vector<int>& truth,
                              std::size_t classes);

// Fraction of correct assignments maximized over label permutations
// (planted-partition scoring for methods with arbitrary labels).
double best_permutation_accuracy(const std::vector<int>& assignments,
                                 const std::vector<int>& truth, std::size_t classes);

}  // namespace mjps

#endif
