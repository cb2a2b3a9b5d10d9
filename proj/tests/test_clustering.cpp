#include <doctest.h>

#include <cmath>

#include "mjpslice/clustering.hpp"
#include "mjpslice/model_factory.hpp"
#include "mjpslice/rng.hpp"

using namespace mjps;

namespace {

std::vector<std::vector<double>> planted_blobs(std::size_t per_blob, Rng& rng,
                                               std::vector<int>* truth) {
  const std::vector<std::vector<double>> centers{{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
  std::vector<std::vector<double>> points;
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t i = 0; i < per_blob; ++i) {
      points.push_back({centers[c][0] + rng.normal(), centers[c][1] + rng.normal()});
      if (truth) truth->push_back(static_cast<int>(c));
    }
  return points;
}

}  // namespace

TEST_CASE("kmeans degenerate cases") {
  Rng rng(157);
  std::vector<int> truth;
  const auto points = planted_blobs(4, rng, &truth);

  SUBCASE("k equals the point count: zero objective") {
    Rng seed(1);
    const auto result = kmeans(points, points.size(), seed);
    CHECK(result.objective == doctest::Approx(0.0));
  }
  SUBCASE("one cluster: the centroid is the coordinate mean") {
    Rng seed(2);
    const auto result = kmeans(points, 1, seed);
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
      mx += p[0] / static_cast<double>(points.size());
      my += p[1] / static_cast<double>(points.size());
    }
    CHECK(result.centers[0][0] == doctest::Approx(mx));
    CHECK(result.centers[0][1] == doctest::Approx(my));
  }
}

TEST_CASE("planted blobs are recovered exactly") {
  Rng rng(163);
  std::vector<int> truth;
  const auto points = planted_blobs(12, rng, &truth);
  Rng k_seed(3), p_seed(4);
  CHECK(best_permutation_accuracy(kmeans(points, 3, k_seed).assignments, truth, 3) == 1.0);
  CHECK(best_permutation_accuracy(pam(points, 3, p_seed).assignments, truth, 3) == 1.0);
}

TEST_CASE("pam resists a single extreme outlier") {
  Rng rng(167);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 12; ++i) points.push_back({rng.normal(), rng.normal()});
  points.push_back({500.0, 500.0});

  Rng k_seed(5), p_seed(6);
  const auto km = kmeans(points, 1, k_seed);
  const auto pm = pam(points, 1, p_seed);

  // the k-means centroid is dragged toward the outlier; the medoid is not
  CHECK(km.centers[0][0] > 30.0);
  CHECK(std::abs(pm.centers[0][0]) < 5.0);
  CHECK(pm.medoid_indices.size() == 1);
  CHECK(pm.medoid_indices[0] < 12);

  // and the L = 1 medoid minimizes the summed squared distance, by scan
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double total = 0.0;
    for (const auto& p : points)
      for (std::size_t j = 0; j < p.size(); ++j)
        total += (p[j] - points[i][j]) * (p[j] - points[i][j]);
    if (total < best) {
      best = total;
      best_i = i;
    }
  }
  CHECK(pm.medoid_indices[0] == static_cast<int>(best_i));
  CHECK(pm.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("pam with k equal to the point count has zero objective") {
  Rng rng(169);
  std::vector<int> truth;
  const auto points = planted_blobs(2, rng, &truth);
  Rng seed(7);
  CHECK(pam(points, points.size(), seed).objective == doctest::Approx(0.0));
}

TEST_CASE("objective equals its recomputation from assignments") {
  Rng rng(173);
  const auto points = planted_blobs(8, rng, nullptr);
  Rng seed(8);
  for (const auto& result : {kmeans(points, 3, seed), pam(points, 3, seed)}) {
    double recomputed = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& c = result.centers[result.assignments[i]];
      for (std::size_t j = 0; j < c.size(); ++j)
        recomputed += (points[i][j] - c[j]) * (points[i][j] - c[j]);
    }
    CHECK(result.objective == doctest::Approx(recomputed).epsilon(1e-9));
  }
}

TEST_CASE("f1 scores on frozen cases") {
  SUBCASE("perfect assignment") {
    const std::vector<int> truth{0, 1, 2, 0, 1, 2};
    const auto f1 = f1_scores(truth, truth, 3);
    for (double v : f1) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("everything predicted as one class over balanced truth") {
    const std::vector<int> truth{0, 1, 2, 0, 1, 2};
    const std::vector<int> all_zero(6, 0);
    const auto f1 = f1_scores(all_zero, truth, 3);
    CHECK(f1[0] == doctest::Approx(0.5));  // precision 1/3, recall 1
    CHECK(f1[1] == doctest::Approx(0.0));
    CHECK(f1[2] == doctest::Approx(0.0));
  }
  SUBCASE("invariant to process order") {
    Rng rng(179);
    std::vector<int> assignments, truth;
    for (int i = 0; i < 60; ++i) {
      assignments.push_back(static_cast<int>(rng.uniform_int(3)));
      truth.push_back(static_cast<int>(rng.uniform_int(3)));
    }
    const auto base = f1_scores(assignments, truth, 3);
    std::vector<std::size_t> perm(60);
    for (std::size_t i = 0; i < 60; ++i) perm[i] = i;
    for (std::size_t i = 59; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
    std::vector<int> a2(60), t2(60);
    for (std::size_t i = 0; i < 60; ++i) {
      a2[i] = assignments[perm[i]];
      t2[i] = truth[perm[i]];
    }
    const auto shuffled = f1_scores(a2, t2, 3);
    for (std::size_t c = 0; c < 3; ++c) CHECK(base[c] == doctest::Approx(shuffled[c]));
  }
}

TEST_CASE("stat vectors carry the free-rate counts and exposures") {
  ToyThreeState model;
  const RateParams rates = model.make_rates();
  Rng rng(181);
  MJPPath path;
  path.horizon = 4.0;
  path.times = {0.0, 1.0, 2.0, 3.0};
  path.states = {State{1}, State{2}, State{3}, State{2}};
  const auto vec = stat_vector(path, model, rates);
  REQUIRE(vec.size() == 4);  // psi_alpha, psi_delta, tau_alpha, tau_delta
  CHECK(vec[0] == doctest::Approx(1.0));  // one 1->2 jump
  CHECK(vec[1] == doctest::Approx(1.0));  // one 3->2 jump
  CHECK(vec[2] == doctest::Approx(1.0));  // one unit in state 1
  CHECK(vec[3] == doctest::Approx(1.0));  // one unit in state 3
}

TEST_CASE("standardization gives zero mean unit variance per coordinate") {
  Rng rng(191);
  const auto points = planted_blobs(10, rng, nullptr);
  const auto scaled = standardize(points);
  for (std::size_t j = 0; j < 2; ++j) {
    double mean = 0.0, var = 0.0;
    for (const auto& p : scaled) mean += p[j] / static_cast<double>(scaled.size());
    for (const auto& p : scaled)
      var += (p[j] - mean) * (p[j] - mean) / static_cast<double>(scaled.size());
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
  }
}
