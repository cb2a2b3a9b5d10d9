#include <doctest.h>

#include <cmath>
#include <map>

#include "mjpslice/model_factory.hpp"
#include "mjpslice/simulate.hpp"
#include "mjpslice/uniformization.hpp"
#include "support/oracles.hpp"

using namespace mjps;

TEST_CASE("kernel rows on frozen toy cases") {
  ToyThreeState model;
  RateParams rates = model.make_rates();
  std::vector<std::pair<State, double>> row;

  SUBCASE("state 1 with alpha = 1, omega = 4") {
    rates.set_value("alpha", 1.0);
    kernel_row(model, rates, 4.0, State{1}, row);
    REQUIRE(row.size() == 2);
    CHECK(row[0].first == State{1});
    CHECK(row[0].second == doctest::Approx(0.75));
    CHECK(row[1].first == State{2});
    CHECK(row[1].second == doctest::Approx(0.25));
  }
  SUBCASE("state 3 with delta = 0.5, omega = 4") {
    kernel_row(model, rates, 4.0, State{3}, row);
    REQUIRE(row.size() == 3);
    std::map<State, double> entries(row.begin(), row.end());
    CHECK(entries[State{3}] == doctest::Approx(0.625));
    CHECK(entries[State{1}] == doctest::Approx(0.25));
    CHECK(entries[State{2}] == doctest::Approx(0.125));
  }
  SUBCASE("rows sum to one") {
    for (std::int64_t s = 1; s <= 3; ++s) {
      kernel_row(model, rates, 5.0, State{s}, row);
      double total = 0.0;
      for (const auto& [state, prob] : row) total += prob;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("omega below the exit rate is rejected") {
    CHECK_THROWS_AS(kernel_row(model, rates, 1.0, State{1}, row), DominatingRateError);
  }
}

TEST_CASE("kernel row with omega at the exit rate drops the self entry") {
  ToyThreeState model;
  RateParams rates = model.make_rates();
  rates.set_value("alpha", 2.0);
  std::vector<std::pair<State, double>> row;
  kernel_row(model, rates, 2.0, State{1}, row);  // omega == exit rate
  CHECK(row[0].second == doctest::Approx(0.0));  // self entry vanishes
  CHECK(row[1].second == doctest::Approx(1.0));
}

TEST_CASE("resample_virtual_times retains the real jumps exactly") {
  ToyThreeState model;
  const RateParams rates = model.make_rates();
  Rng sim_rng(23);
  const MJPPath path = simulate_gillespie(model, rates, 25.0, sim_rng);
  Rng rng(29);
  const double omega = 2.0 * model.rate_bound(rates);
  for (int rep = 0; rep < 50; ++rep) {
    const UniformizedPath upath = resample_virtual_times(path, omega, model, rates, rng);
    validate_upath(upath, model, rates);
    const MJPPath back = strip_virtual(upath);
    CHECK(back.times == path.times);
    CHECK(back.states == path.states);
  }
}

TEST_CASE("omega equal to the exit rate inserts no virtual jumps") {
  // P_xx = 0 makes the virtual-jump process a zero-rate Poisson
  ToyThreeState model;
  RateParams rates = model.make_rates();
  MJPPath path;
  path.horizon = 3.0;
  path.times = {0.0};
  path.states = {State{1}};
  Rng rng(31);
  const UniformizedPath upath =
      resample_virtual_times(path, model.exit_rate(State{1}, rates), model, rates, rng);
  CHECK(upath.transition_count() == 0);
}

TEST_CASE("virtual jump counts are Poisson(omega - exit) per segment") {
  // one-state path, exit rate 1, omega 2, T 3: count ~ Poisson(3)
  ToyThreeState model;
  RateParams rates = model.make_rates();
  rates.set_value("alpha", 1.0);
  MJPPath path;
  path.horizon = 3.0;
  path.times = {0.0};
  path.states = {State{1}};

  Rng rng(37);
  const std::size_t reps = 10000;
  std::vector<std::uint64_t> counts;
  double mean = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    const UniformizedPath upath = resample_virtual_times(path, 2.0, model, rates, rng);
    counts.push_back(upath.transition_count());
    mean += static_cast<double>(upath.transition_count()) / static_cast<double>(reps);
  }
  CHECK(mean == doctest::Approx(3.0).epsilon(0.02));  // 3 +- 0.06
  CHECK(testing::poisson_gof_pvalue(counts, 3.0) > 0.01);
}

TEST_CASE("uniformized forward simulation matches gillespie marginals") {
  // equivalence of the two constructions at t = 1 on the toy chain
  ToyThreeState model;
  const RateParams rates = model.make_rates();
  const double omega = 2.0 * model.rate_bound(rates);
  const std::size_t draws = 100000;

  std::map<State, double> gillespie_dist, uniformized_dist;
  Rng g_rng(41), u_rng(43);
  for (std::size_t i = 0; i < draws; ++i) {
    gillespie_dist[simulate_gillespie(model, rates, 1.0, g_rng).states.back()] += 1.0 / draws;
    uniformized_dist[strip_virtual(simulate_uniformized(model, rates, omega, 1.0, u_rng))
                         .states.back()] += 1.0 / draws;
  }
  CHECK(testing::total_variation(gillespie_dist, uniformized_dist) < 0.02);
}
