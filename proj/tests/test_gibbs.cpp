#include <doctest.h>

#include <cmath>

#include "mjpslice/gamma_math.hpp"
#include "mjpslice/mcmc.hpp"
#include "mjpslice/model_factory.hpp"
#include "mjpslice/simulate.hpp"

using namespace mjps;

TEST_CASE("incomplete gamma kernels against frozen references") {
  // P(1, x) = 1 - exp(-x); chi-square 95% point at 1 df is 3.841.
  CHECK(reg_lower_gamma(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(reg_lower_gamma(2.5, 0.0) == 0.0);
  CHECK(chi_square_sf(3.841, 1.0) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(gamma_quantile(gamma_cdf(2.3, 4.0, 1.5), 4.0, 1.5) == doctest::Approx(2.3).epsilon(1e-9));
}

TEST_CASE("rate pools on frozen cases") {
  ToyThreeState model;
  const RateParams rates = model.make_rates();

  SUBCASE("empty cluster pools to zero") {
    const auto pool = rate_sufficient_pools({}, {}, 0, "alpha", model, rates);
    CHECK(pool.psi == 0.0);
    CHECK(pool.tau == 0.0);
  }
  SUBCASE("alpha pools the 1->2 count and the state-1 occupancy") {
    Rng rng(97);
    const MJPPath path = simulate_gillespie(model, rates, 50.0, rng);
    const auto stats = sufficient_statistics(path, model, rates);
    const auto pool = rate_sufficient_pools({path}, {0}, 0, "alpha", model, rates);

    std::size_t jumps_12 = 0;
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i)
      jumps_12 += path.states[i] == State{1} && path.states[i + 1] == State{2};
    CHECK(pool.psi == doctest::Approx(static_cast<double>(jumps_12)));
    CHECK(pool.tau == doctest::Approx(stats.holding_times.at(State{1})));
  }
  SUBCASE("manpower-weighted exposure accumulates weight times duration") {
    // discharge weight min(L_r, a - d) = min(3, 5) = 3 held for 2 time units
    const auto hospital = make_model("hospital_mmpp", {{"L1", 10}, {"L2", 3}});
    const RateParams hrates = hospital->make_rates();
    MJPPath path;
    path.horizon = 2.0;
    path.times = {0.0};
    path.states = {State{5, 0, 2}};
    const auto pool = rate_sufficient_pools({path}, {0}, 0, "mu", *hospital, hrates);
    CHECK(pool.tau == doctest::Approx(6.0));
    CHECK(pool.psi == 0.0);
  }
}

TEST_CASE("conjugate rate draws") {
  ToyThreeState model;
  RatePrior prior;

  SUBCASE("empty pool reproduces the exponential prior") {
    prior.set("alpha", {1.0, 1.0});
    Rng rng(101);
    double mean = 0.0;
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto out = gibbs_rate_update(model.make_rates(), {}, prior, {}, rng);
      mean += out.value("alpha") / static_cast<double>(draws);
    }
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("posterior moments match Gamma(a0 + psi, b0 + tau)") {
    prior.set("alpha", {1.0, 0.01});
    std::map<std::string, RatePool> pools{{"alpha", {5.0, 10.0}}};
    Rng rng(103);
    double mean = 0.0, second = 0.0;
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
      const double v = gibbs_rate_update(model.make_rates(), pools, prior, {}, rng).value("alpha");
      mean += v / static_cast<double>(draws);
      second += v * v / static_cast<double>(draws);
    }
    const double expect_mean = 6.0 / 10.01;
    const double expect_var = 6.0 / (10.01 * 10.01);
    CHECK(mean == doctest::Approx(expect_mean).epsilon(0.006));
    CHECK(second - mean * mean == doctest::Approx(expect_var).epsilon(0.02));
    CHECK(expect_mean == doctest::Approx(0.5994).epsilon(0.001));
  }
  SUBCASE("fixed rates never move") {
    Rng rng(107);
    const auto out = gibbs_rate_update(model.make_rates(), {}, prior, {}, rng);
    CHECK(out.value("rate23") == 1.0);
    CHECK(out.value("rate31") == 1.0);
  }
}

TEST_CASE("order constraints hold for every accepted draw") {
  const auto hospital = make_model("hospital_mmpp", {});
  const auto constraints = hospital->default_constraints();
  RatePrior prior;
  Rng rng(109);
  std::map<std::string, RatePool> pools{{"lambda1", {40.0, 30.0}}, {"lambda2", {50.0, 30.0}}};
  // posterior means 1.33 and 1.67 sit astride the 1.25x constraint boundary,
  // so both rejection and fallback paths get exercised
  for (int i = 0; i < 3000; ++i) {
    const auto out =
        gibbs_rate_update(hospital->make_rates(), pools, prior, constraints, rng);
    CHECK(1.25 * out.value("lambda1") < out.value("lambda2"));
  }
}

TEST_CASE("cross-cluster order constraints") {
  const auto tandem = make_model("tandem", {});
  RatePrior prior;
  prior.set("mu1", {2.0, 1.0});
  std::vector<OrderConstraint> chain{{1.0, "mu1", "mu1", 0, 1}, {1.0, "mu1", "mu1", 1, 2}};
  std::vector<RateParams> current(3, tandem->make_rates());
  std::vector<std::map<std::string, RatePool>> pools(3);
  Rng rng(113);
  for (int i = 0; i < 2000; ++i) {
    current = gibbs_rates_update_all(current, pools, prior, chain, rng);
    CHECK(current[0].value("mu1") < current[1].value("mu1"));
    CHECK(current[1].value("mu1") < current[2].value("mu1"));
  }
}

TEST_CASE("membership updates") {
  ToyThreeState model;
  const RateParams rates = model.make_rates();
  Rng sim_rng(127);
  std::vector<MJPPath> paths;
  for (int k = 0; k < 40; ++k) paths.push_back(simulate_gillespie(model, rates, 30.0, sim_rng));

  SUBCASE("a single class absorbs everything") {
    Rng rng(1);
    const auto c = gibbs_membership_update(paths, {rates}, MembershipPrior::uniform(1), model, rng);
    for (int v : c) CHECK(v == 0);
  }
  SUBCASE("identical rate sets split evenly by symmetry") {
    Rng rng(2);
    std::size_t in_first = 0, total = 0;
    for (int rep = 0; rep < 400; ++rep) {
      const auto c =
          gibbs_membership_update(paths, {rates, rates}, MembershipPrior::uniform(2), model, rng);
      for (int v : c) in_first += v == 0;
      total += c.size();
    }
    CHECK(static_cast<double>(in_first) / static_cast<double>(total) ==
          doctest::Approx(0.5).epsilon(0.02));
  }
  SUBCASE("well-separated planted clusters are recovered") {
    // three parameter sets far apart; draws condition on the true paths
    std::vector<RateParams> sets(3, model.make_rates());
    sets[0].set_value("alpha", 0.3);
    sets[0].set_value("delta", 0.3);
    sets[1].set_value("alpha", 2.0);
    sets[1].set_value("delta", 2.0);
    sets[2].set_value("alpha", 8.0);
    sets[2].set_value("delta", 8.0);

    Rng plant_rng(131);
    std::vector<MJPPath> planted;
    std::vector<int> truth;
    for (int k = 0; k < 30; ++k) {
      const int c = k % 3;
      truth.push_back(c);
      planted.push_back(simulate_gillespie(model, sets[c], 30.0, plant_rng));
    }
    Rng rng(3);
    const auto c = gibbs_membership_update(planted, sets, MembershipPrior::uniform(3), model, rng);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < truth.size(); ++k) hits += c[k] == truth[k];
    CHECK(static_cast<double>(hits) / static_cast<double>(truth.size()) >= 0.9);
  }
  SUBCASE("all-impossible densities raise an inference error") {
    ToyThreeState toy;
    MJPPath bad;
    bad.horizon = 1.0;
    bad.times = {0.0, 0.5};
    bad.states = {State{1}, State{3}};  // zero-rate transition
    Rng rng(4);
    CHECK_THROWS_AS(
        gibbs_membership_update({bad}, {rates}, MembershipPrior::uniform(1), toy, rng),
        InferenceError);
  }
}

TEST_CASE("toy posterior recovers planted rates end to end") {
  // K = 1 fully latent toy run: planted alpha = 2, delta = 0.5 within three
  // posterior standard deviations
  const auto model = make_model("toy3", {});
  RateParams truth_rates = model->make_rates();

  Rng sim_rng(137);
  const MJPPath truth = simulate_gillespie(*model, truth_rates, 400.0, sim_rng);
  SliceConfig slice(0.2, 0.5);
  Rng thin_rng(139);
  ProcessData proc;
  proc.horizon = 400.0;
  proc.z = thin_jump_observations(
      truth, *model, [&slice](const JumpLabel& lab) { return slice.q_z(lab); }, thin_rng);
  // anchor the ends lightly with two exact observations
  proc.y.push_back(exact_state_observation(0.0, truth.states.front()));

  McmcOptions options;
  options.iterations = 1200;
  options.burn_in = 200;
  options.chains = 1;
  options.slice = slice;
  options.seed = 17;
  options.prior.set("alpha", {1.0, 0.01});
  options.prior.set("delta", {1.0, 0.01});

  const McmcTrace trace = run_mcmc(*model, {proc}, options);
  for (const char* name : {"alpha", "delta"}) {
    const auto values = trace.rate_trace(0, name);
    double mean = 0.0, sd = 0.0;
    for (double v : values) mean += v / static_cast<double>(values.size());
    for (double v : values) sd += (v - mean) * (v - mean) / static_cast<double>(values.size());
    sd = std::sqrt(sd);
    const double planted = truth_rates.value(name);
    CHECK(std::abs(mean - planted) < 3.0 * sd);
  }
}
