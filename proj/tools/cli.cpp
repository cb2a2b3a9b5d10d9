#include <CLI11.hpp>
#include <iostream>

#include "mjpslice/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_file;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "JSON config file")->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--override", args.overrides, "config override key=value (repeatable)");
  cmd->add_option("--seed", args.seed, "seed override")->trigger_on_parse()->each([&args](const std::string&) {
    args.has_seed = true;
  });
}

int dispatch(const CommonArgs& args, void (*body)(const mjps::RunConfig&, const std::string&)) {
  try {
    const mjps::RunConfig cfg =
        mjps::load_config(args.config_file, args.overrides, args.seed, args.has_seed);
    body(cfg, args.out_dir);
    return 0;
  } catch (const mjps::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformization-based MCMC data augmentation for Markov jump processes"};
  app.require_subcommand(1);

  CommonArgs sim_args, infer_args, cluster_args, compare_args;
  CLI::App* sim = app.add_subcommand("simulate", "draw paths and observations");
  add_common(sim, sim_args);
  CLI::App* infer = app.add_subcommand("infer", "posterior inference by data augmentation");
  add_common(infer, infer_args);
  CLI::App* cluster = app.add_subcommand("cluster", "membership clustering and summaries");
  add_common(cluster, cluster_args);
  CLI::App* compare = app.add_subcommand("compare", "ESS and timing over a (p, omega) grid");
  add_common(compare, compare_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  if (sim->parsed()) return dispatch(sim_args, mjps::cmd_simulate);
  if (infer->parsed()) return dispatch(infer_args, mjps::cmd_infer);
  if (cluster->parsed()) return dispatch(cluster_args, mjps::cmd_cluster);
  if (compare->parsed()) return dispatch(compare_args, mjps::cmd_compare);
  return 2;
}
