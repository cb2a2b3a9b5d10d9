#ifndef MJPSLICE_CONFIG_HPP
#define MJPSLICE_CONFIG_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mjpslice/mcmc.hpp"
#include "mjpslice/model_factory.hpp"

namespace mjps {

// Validated run configuration shared by the subcommands. The JSON schema is
// documented in the README; unknown keys are rejected everywhere.
struct RunConfig {
  std::string model_name;
  nlohmann::json model_params;

  double horizon = 10.0;
  std::size_t processes = 1;  // K
  std::size_t clusters = 1;   // L
  std::size_t chains = 1;
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  double omega_scale = 2.0;
  double p = 0.0;
  double q_z = 0.0;
  std::uint64_t seed = 1;
  std::size_t retry_limit = 25;
  int threads = 0;

  RatePrior prior;
  std::vector<OrderConstraint> constraints;
  std::vector<std::string> order_across_clusters;
  nlohmann::json rates;  // free-rate values for simulation / planted truth

  // simulate section
  std::string y_mode = "none";  // none | exact_state
  std::size_t y_count = 0;

  // cluster section
  std::string cluster_method = "gibbs";  // gibbs | kmeans | pam
  std::string truth_file;

  // compare section
  std::vector<double> p_grid;
  std::vector<double> omega_grid;

  // data section
  std::string paths_file;
  std::string observations_file;

  std::string raw_text;  // canonical JSON for the manifest fingerprint

  std::unique_ptr<GeneratorModel> make_model_instance() const;
  SliceConfig make_slice(const GeneratorModel& model) const;
  SliceConfig make_slice(const GeneratorModel& model, double p_value) const;
  RateParams make_simulation_rates(const GeneratorModel& model) const;
  McmcOptions make_mcmc_options(const GeneratorModel& model) const;
  std::vector<OrderConstraint> all_constraints(const GeneratorModel& model) const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& file,
                      const std::vector<std::string>& overrides = {},
                      std::uint64_t seed_override = 0, bool has_seed_override = false);

}  // namespace mjps

#endif
