#include "mjpslice/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "mjpslice/clustering.hpp"
#include "mjpslice/diagnostics.hpp"
#include "mjpslice/simulate.hpp"

namespace mjps {

using nlohmann::json;

namespace {

std::string joined(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + dir);
}

void write_manifest(const std::string& out_dir, const RunConfig& cfg, const std::string& command,
                    double wall_seconds, const std::vector<std::string>& files) {
  json doc;
  doc["command"] = command;
  doc["config_hash"] = sha_like_hash(cfg.raw_text);
  doc["seed"] = cfg.seed;
  doc["wall_clock_seconds"] = wall_seconds;
  doc["files"] = files;
  std::ofstream out(joined(out_dir, "manifest.json"));
  out << doc.dump(2) << "\n";
}

std::vector<int> load_truth(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open truth file: " + file);
  json doc;
  in >> doc;
  return doc.get<std::vector<int>>();
}

struct SummaryStats {
  double mean, sd, median, q1, q3;
};

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s{0, 0, 0, 0, 0};
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v / n;
  for (double v : values) s.sd += (v - s.mean) * (v - s.mean) / n;
  s.sd = std::sqrt(s.sd);
  s.median = quantile(values, 0.5);
  s.q1 = quantile(values, 0.25);
  s.q3 = quantile(values, 0.75);
  return s;
}

// Table-style summary across kept iterations: per class, membership counts
// and (with truth) F1 scores.
void write_cluster_summary(const std::string& file, const std::string& method,
                           const std::vector<std::vector<int>>& kept_memberships,
                           std::size_t classes, const std::vector<int>* truth) {
  std::ofstream out(file);
  out.precision(10);
  out << "method,class,count_mean,count_std,count_median,count_q1,count_q3";
  if (truth) out << ",f1_mean,f1_std,f1_median,f1_q1,f1_q3";
  out << "\n";
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<double> counts, f1s;
    for (const auto& row : kept_memberships) {
      double count = 0.0;
      for (int v : row) count += (v == static_cast<int>(c));
      counts.push_back(count);
      if (truth) f1s.push_back(f1_scores(row, *truth, classes)[c]);
    }
    const SummaryStats cs = summarize(counts);
    out << method << "," << c << "," << cs.mean << "," << cs.sd << "," << cs.median << ","
        << cs.q1 << "," << cs.q3;
    if (truth) {
      const SummaryStats fs = summarize(f1s);
      out << "," << fs.mean << "," << fs.sd << "," << fs.median << "," << fs.q1 << "," << fs.q3;
    }
    out << "\n";
  }
}

}  // namespace

SimulatedData simulate_processes(const RunConfig& cfg, const GeneratorModel& model,
                                 const RateParams& rates) {
  SimulatedData sim;
  const SliceConfig slice = cfg.make_slice(model);
  for (std::size_t k = 0; k < cfg.processes; ++k) {
    Rng sim_rng(cfg.seed, {static_cast<std::uint64_t>(StreamTag::simulate), k});
    MJPPath path = simulate_gillespie(model, rates, cfg.horizon, sim_rng);

    ProcessData proc;
    proc.horizon = cfg.horizon;
    Rng thin_rng(cfg.seed, {static_cast<std::uint64_t>(StreamTag::thin), k});
    proc.z = thin_jump_observations(
        path, model, [&slice](const JumpLabel& lab) { return slice.q_z(lab); }, thin_rng);

    if (cfg.y_mode == "exact_state" && cfg.y_count > 0) {
      for (std::size_t j = 1; j <= cfg.y_count; ++j) {
        const double t = cfg.horizon * static_cast<double>(j) /
                         static_cast<double>(cfg.y_count + 1);
        proc.y.push_back(exact_state_observation(t, path.state_at(t)));
      }
    }
    sim.paths.push_back(std::move(path));
    sim.data.push_back(std::move(proc));
  }
  return sim;
}

void cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ensure_dir(out_dir);
  const auto model = cfg.make_model_instance();
  const RateParams rates = cfg.make_simulation_rates(*model);
  const SimulatedData sim = simulate_processes(cfg, *model, rates);

  write_paths_jsonl(joined(out_dir, "paths.jsonl"), sim.paths);
  write_observations_jsonl(joined(out_dir, "observations.jsonl"), sim.data);

  std::size_t jumps = 0, z_count = 0, y_count = 0;
  for (const auto& path : sim.paths) jumps += path.jump_count();
  for (const auto& proc : sim.data) {
    z_count += proc.z.entries.size();
    y_count += proc.y.size();
  }
  const auto stop = std::chrono::steady_clock::now();
  write_manifest(out_dir, cfg, "simulate", std::chrono::duration<double>(stop - start).count(),
                 {"paths.jsonl", "observations.jsonl"});
  std::cout << "simulate: " << cfg.processes << " processes, " << jumps << " jumps, " << z_count
            << " jump observations, " << y_count << " timed observations\n";
}

namespace {

std::vector<ProcessData> load_data(const RunConfig& cfg) {
  if (cfg.observations_file.empty())
    throw ConfigError("data.observations is required for this subcommand");
  auto data = read_observations_jsonl(cfg.observations_file, cfg.horizon);
  if (data.size() != cfg.processes)
    throw ConfigError("observations file holds " + std::to_string(data.size()) +
                      " processes but K = " + std::to_string(cfg.processes));
  return data;
}

}  // namespace

void cmd_infer(const RunConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ensure_dir(out_dir);
  const auto model = cfg.make_model_instance();
  const auto data = load_data(cfg);

  const McmcOptions options = cfg.make_mcmc_options(*model);
  const McmcTrace trace = run_mcmc(*model, data, options);

  write_trace_csv(joined(out_dir, "trace.csv"), trace);
  write_memberships_csv(joined(out_dir, "memberships.csv"), trace);
  write_timing_csv(joined(out_dir, "timing.csv"), trace);
  write_diagnostics_json(joined(out_dir, "diagnostics.json"), trace.stats);

  std::vector<MetricRow> metrics;
  const double total_aug = trace.total_augment_seconds();
  for (std::size_t chain = 0; chain < options.chains; ++chain) {
    if (trace.rates[chain].size() < 10) continue;
    for (const auto& name : trace.rate_names) {
      const auto values = trace.rate_trace(chain, name);
      const EssResult ess = effective_sample_size(values);
      metrics.push_back({"ess", name + ":chain" + std::to_string(chain), ess.ess});
      if (total_aug > 0.0)
        metrics.push_back(
            {"ess_per_sec", name + ":chain" + std::to_string(chain), ess.ess / total_aug});
    }
    for (std::size_t a = 0; a < trace.rate_names.size(); ++a)
      for (std::size_t b = a + 1; b < trace.rate_names.size(); ++b) {
        const auto corr = trace_correlation(trace.rate_trace(chain, trace.rate_names[a]),
                                            trace.rate_trace(chain, trace.rate_names[b]));
        if (corr)
          metrics.push_back({"trace_corr",
                             trace.rate_names[a] + ":" + trace.rate_names[b] + ":chain" +
                                 std::to_string(chain),
                             *corr});
      }
  }
  metrics.push_back({"augment_seconds_total", "all", total_aug});
  write_metrics_csv(joined(out_dir, "diagnostics.csv"), metrics);

  const auto stop = std::chrono::steady_clock::now();
  write_manifest(out_dir, cfg, "infer", std::chrono::duration<double>(stop - start).count(),
                 {"trace.csv", "memberships.csv", "timing.csv", "diagnostics.json",
                  "diagnostics.csv"});
  std::cout << "infer: " << trace.rates[0].size() << " kept iterations per chain, "
            << options.chains << " chain(s), augment time " << total_aug << " s\n";
}

void cmd_cluster(const RunConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ensure_dir(out_dir);
  const auto model = cfg.make_model_instance();

  std::vector<int> truth;
  const std::vector<int>* truth_ptr = nullptr;
  if (!cfg.truth_file.empty()) {
    truth = load_truth(cfg.truth_file);
    if (truth.size() != cfg.processes) throw ConfigError("truth size differs from K");
    truth_ptr = &truth;
  }

  std::vector<std::vector<int>> kept;
  if (!cfg.paths_file.empty()) {
    // Fully observed paths: no augmentation, repeated assignment sweeps.
    auto paths = read_paths_jsonl(cfg.paths_file);
    if (paths.size() != cfg.processes) throw ConfigError("paths file size differs from K");
    const RateParams schema = model->make_rates();

    if (cfg.cluster_method == "gibbs") {
      Rng rng(cfg.seed, {static_cast<std::uint64_t>(StreamTag::cluster)});
      std::vector<RateParams> cluster_rates(cfg.clusters, schema);
      std::vector<std::map<std::string, RatePool>> empty_pools(cfg.clusters);
      const auto constraints = cfg.all_constraints(*model);
      cluster_rates =
          gibbs_rates_update_all(cluster_rates, empty_pools, cfg.prior, constraints, rng);
      const MembershipPrior prior = MembershipPrior::uniform(cfg.clusters);
      std::vector<int> memberships(paths.size(), 0);
      for (std::size_t t = 1; t <= cfg.iterations; ++t) {
        memberships = gibbs_membership_update(paths, cluster_rates, prior, *model, rng);
        std::vector<std::map<std::string, RatePool>> pools(cfg.clusters);
        for (std::size_t l = 0; l < cfg.clusters; ++l)
          for (const auto& name : schema.free_names())
            pools[l][name] = rate_sufficient_pools(paths, memberships, static_cast<int>(l), name,
                                                   *model, cluster_rates[l]);
        cluster_rates = gibbs_rates_update_all(cluster_rates, pools, cfg.prior, constraints, rng);
        if (t >= cfg.burn_in) kept.push_back(memberships);
      }
    } else {
      std::vector<std::vector<double>> points;
      for (const auto& path : paths) points.push_back(stat_vector(path, *model, schema));
      const auto standardized = standardize(points);
      for (std::size_t t = 1; t <= cfg.iterations; ++t) {
        Rng rng(cfg.seed, {static_cast<std::uint64_t>(StreamTag::cluster), t});
        const ClusterResult result = cfg.cluster_method == "kmeans"
                                         ? kmeans(standardized, cfg.clusters, rng)
                                         : pam(standardized, cfg.clusters, rng);
        if (t >= cfg.burn_in) kept.push_back(result.assignments);
      }
    }
  } else {
    // Latent paths: full augmentation loop with the chosen assignment method.
    const auto data = load_data(cfg);
    const McmcOptions options = cfg.make_mcmc_options(*model);
    const McmcTrace trace = run_mcmc(*model, data, options);
    for (const auto& row : trace.memberships[0]) kept.push_back(row);
  }

  write_cluster_summary(joined(out_dir, "summary.csv"), cfg.cluster_method, kept, cfg.clusters,
                        truth_ptr);
  const auto stop = std::chrono::steady_clock::now();
  write_manifest(out_dir, cfg, "cluster", std::chrono::duration<double>(stop - start).count(),
                 {"summary.csv"});
  std::cout << "cluster: method " << cfg.cluster_method << ", " << kept.size()
            << " kept assignment sweeps\n";
}

std::vector<CompareCell> run_compare_grid(const RunConfig& cfg, const GeneratorModel& model,
                                          const std::vector<ProcessData>& data) {
  std::vector<CompareCell> cells;
  std::map<double, double> baseline_seconds;  // omega scale -> p = 0 augment seconds

  for (double scale : cfg.omega_grid) {
    for (double p : cfg.p_grid) {
      McmcOptions options = cfg.make_mcmc_options(model);
      options.omega_scale = scale;
      options.slice = cfg.make_slice(model, p);

      const McmcTrace trace = run_mcmc(model, data, options);

      CompareCell cell;
      cell.p = p;
      cell.omega_scale = scale;
      cell.rate_names = trace.rate_names;
      const double chains = static_cast<double>(options.chains);

      double total_aug = trace.total_augment_seconds();
      const double sweeps = static_cast<double>(options.iterations) * chains;
      cell.mean_augment_seconds = sweeps > 0 ? total_aug / sweeps : 0.0;

      for (const auto& name : trace.rate_names) {
        double mean_ess = 0.0;
        for (std::size_t chain = 0; chain < options.chains; ++chain)
          mean_ess += effective_sample_size(trace.rate_trace(chain, name)).ess / chains;
        cell.ess.push_back(mean_ess);
        cell.ess_per_sec.push_back(total_aug > 0 ? mean_ess * chains / total_aug : 0.0);
      }
      cells.push_back(cell);
    }
  }

  for (auto& cell : cells)
    if (cell.p == 0.0) baseline_seconds[cell.omega_scale] = cell.mean_augment_seconds;
  for (auto& cell : cells) {
    auto it = baseline_seconds.find(cell.omega_scale);
    if (it != baseline_seconds.end() && it->second > 0.0)
      cell.pct_time_decrease = 100.0 * (1.0 - cell.mean_augment_seconds / it->second);
  }
  return cells;
}

void cmd_compare(const RunConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ensure_dir(out_dir);
  const auto model = cfg.make_model_instance();
  const auto data = load_data(cfg);
  if (cfg.p_grid.empty()) throw ConfigError("compare.p_grid is required");

  const auto cells = run_compare_grid(cfg, *model, data);

  std::ofstream out(joined(out_dir, "compare.csv"));
  out.precision(10);
  out << "p,omega_scale,name,ess,ess_per_sec,mean_augment_seconds,pct_time_decrease\n";
  for (const auto& cell : cells)
    for (std::size_t j = 0; j < cell.rate_names.size(); ++j)
      out << cell.p << "," << cell.omega_scale << "," << cell.rate_names[j] << "," << cell.ess[j]
          << "," << cell.ess_per_sec[j] << "," << cell.mean_augment_seconds << ","
          << cell.pct_time_decrease << "\n";
  out.close();

  const auto stop = std::chrono::steady_clock::now();
  write_manifest(out_dir, cfg, "compare", std::chrono::duration<double>(stop - start).count(),
                 {"compare.csv"});
  std::cout << "compare: " << cells.size() << " grid cells\n";
}

}  // namespace mjps
