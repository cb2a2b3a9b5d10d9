#include "mjpslice/config.hpp"

#include <fstream>
#include <set>

namespace mjps {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown key in " + where + ": " + it.key());
}

json apply_override(json doc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: " + spec);
  const std::string dotted = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  json* node = &doc;
  std::size_t pos = 0;
  for (;;) {
    const auto dot = dotted.find('.', pos);
    const std::string key = dotted.substr(pos, dot - pos);
    if (dot == std::string::npos) {
      json parsed;
      try {
        parsed = json::parse(value);
      } catch (const json::parse_error&) {
        parsed = value;  // bare strings allowed
      }
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
  return doc;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"model", "model_params", "horizon", "K", "L", "chains", "iterations", "burn_in",
                  "thin", "omega_scale", "p", "q_z", "seed", "retry_limit", "threads", "priors",
                  "constraints", "order_across_clusters", "rates", "simulate", "cluster",
                  "compare", "data"},
                 "config");

  RunConfig cfg;
  if (!doc.contains("model")) throw ConfigError("config requires a model name");
  cfg.model_name = doc.at("model").get<std::string>();
  cfg.model_params = doc.value("model_params", json::object());

  cfg.horizon = doc.value("horizon", cfg.horizon);
  if (!(cfg.horizon >= 0.0)) throw ConfigError("horizon must be nonnegative");
  cfg.processes = doc.value("K", cfg.processes);
  cfg.clusters = doc.value("L", cfg.clusters);
  if (cfg.clusters < 1) throw ConfigError("L must be at least 1");
  if (cfg.processes < 1) throw ConfigError("K must be at least 1");
  cfg.chains = doc.value("chains", cfg.chains);
  cfg.iterations = doc.value("iterations", cfg.iterations);
  cfg.burn_in = doc.value("burn_in", cfg.burn_in);
  cfg.thin = doc.value("thin", cfg.thin);
  if (cfg.thin < 1) throw ConfigError("thin must be at least 1");
  cfg.omega_scale = doc.value("omega_scale", cfg.omega_scale);
  if (!(cfg.omega_scale > 1.0)) throw ConfigError("omega_scale must be > 1");
  cfg.p = doc.value("p", cfg.p);
  cfg.q_z = doc.value("q_z", cfg.q_z);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.retry_limit = doc.value("retry_limit", cfg.retry_limit);
  cfg.threads = doc.value("threads", cfg.threads);

  if (doc.contains("priors")) {
    const json& priors = doc.at("priors");
    if (!priors.is_object()) throw ConfigError("priors must map rate names to {shape, rate}");
    for (auto it = priors.begin(); it != priors.end(); ++it) {
      reject_unknown(*it, {"shape", "rate"}, "priors." + it.key());
      GammaPrior g;
      g.shape = it->value("shape", 1.0);
      g.rate = it->value("rate", 0.01);
      if (!(g.shape > 0.0 && g.rate > 0.0))
        throw ConfigError("prior hyperparameters must be positive for " + it.key());
      cfg.prior.set(it.key(), g);
    }
  }

  if (doc.contains("constraints")) {
    for (const json& c : doc.at("constraints")) {
      reject_unknown(c, {"scale", "lhs", "rhs", "lhs_cluster", "rhs_cluster"}, "constraints[]");
      OrderConstraint oc;
      oc.scale = c.value("scale", 1.0);
      oc.lhs = c.at("lhs").get<std::string>();
      oc.rhs = c.at("rhs").get<std::string>();
      oc.lhs_cluster = c.value("lhs_cluster", -1);
      oc.rhs_cluster = c.value("rhs_cluster", -1);
      if (!(oc.scale > 0.0)) throw ConfigError("constraint scale must be positive");
      cfg.constraints.push_back(oc);
    }
  }
  if (doc.contains("order_across_clusters"))
    cfg.order_across_clusters = doc.at("order_across_clusters").get<std::vector<std::string>>();

  cfg.rates = doc.value("rates", json::object());

  if (doc.contains("simulate")) {
    const json& sim = doc.at("simulate");
    reject_unknown(sim, {"y_mode", "y_count"}, "simulate");
    cfg.y_mode = sim.value("y_mode", cfg.y_mode);
    cfg.y_count = sim.value("y_count", cfg.y_count);
    if (cfg.y_mode != "none" && cfg.y_mode != "exact_state")
      throw ConfigError("simulate.y_mode must be none or exact_state");
  }

  if (doc.contains("cluster")) {
    const json& cluster = doc.at("cluster");
    reject_unknown(cluster, {"method", "truth"}, "cluster");
    cfg.cluster_method = cluster.value("method", cfg.cluster_method);
    cfg.truth_file = cluster.value("truth", cfg.truth_file);
    if (cfg.cluster_method != "gibbs" && cfg.cluster_method != "kmeans" &&
        cfg.cluster_method != "pam")
      throw ConfigError("cluster.method must be gibbs, kmeans or pam");
  }

  if (doc.contains("compare")) {
    const json& compare = doc.at("compare");
    reject_unknown(compare, {"p_grid", "omega_grid"}, "compare");
    cfg.p_grid = compare.value("p_grid", std::vector<double>{0.0});
    cfg.omega_grid = compare.value("omega_grid", std::vector<double>{cfg.omega_scale});
    if (cfg.p_grid.empty() || cfg.omega_grid.empty())
      throw ConfigError("compare grids must be nonempty");
  }

  if (doc.contains("data")) {
    const json& data = doc.at("data");
    reject_unknown(data, {"paths", "observations"}, "data");
    cfg.paths_file = data.value("paths", cfg.paths_file);
    cfg.observations_file = data.value("observations", cfg.observations_file);
  }

  cfg.raw_text = doc.dump();

  // Constraint sanity against the model schema; also validates model_params
  // and the slice parameters early so config errors surface before any work.
  const auto model = cfg.make_model_instance();
  cfg.make_slice(*model);
  const RateParams schema = model->make_rates();
  for (const auto& c : cfg.all_constraints(*model)) {
    if (!schema.has(c.lhs) || !schema.has(c.rhs))
      throw ConfigError("constraint names an undeclared rate: " + c.lhs + " / " + c.rhs);
  }
  return cfg;
}

RunConfig load_config(const std::string& file, const std::vector<std::string>& overrides,
                      std::uint64_t seed_override, bool has_seed_override) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config parse error: ") + err.what());
  }
  for (const auto& spec : overrides) doc = apply_override(doc, spec);
  if (has_seed_override) doc["seed"] = seed_override;
  return parse_config(doc);
}

std::unique_ptr<GeneratorModel> RunConfig::make_model_instance() const {
  return make_model(model_name, model_params);
}

SliceConfig RunConfig::make_slice(const GeneratorModel& model) const {
  return make_slice(model, p);
}

SliceConfig RunConfig::make_slice(const GeneratorModel& model, double p_value) const {
  SliceConfig slice(p_value, q_z);
  for (const auto& [t, q] : model_tag_q_z(model)) slice.set_tag_q_z(t, q);
  return slice;
}

RateParams RunConfig::make_simulation_rates(const GeneratorModel& model) const {
  RateParams out = model.make_rates();
  for (auto it = rates.begin(); it != rates.end(); ++it)
    out.set_value(it.key(), it.value().get<double>());
  if (!out.valid(all_constraints(model)))
    throw ConfigError("rates violate a declared order constraint");
  return out;
}

std::vector<OrderConstraint> RunConfig::all_constraints(const GeneratorModel& model) const {
  std::vector<OrderConstraint> out = model.default_constraints();
  for (const auto& c : constraints) out.push_back(c);
  for (const auto& name : order_across_clusters)
    for (std::size_t l = 0; l + 1 < clusters; ++l)
      out.push_back(OrderConstraint{1.0, name, name, static_cast<int>(l), static_cast<int>(l + 1)});
  return out;
}

McmcOptions RunConfig::make_mcmc_options(const GeneratorModel& model) const {
  McmcOptions opt;
  opt.iterations = iterations;
  opt.burn_in = burn_in;
  opt.thin = thin;
  opt.chains = chains;
  opt.clusters = clusters;
  opt.omega_scale = omega_scale;
  opt.slice = make_slice(model);
  opt.retry_limit = retry_limit;
  opt.seed = seed;
  opt.threads = threads;
  opt.prior = prior;
  opt.constraints = all_constraints(model);
  if (cluster_method == "kmeans")
    opt.assign = AssignMethod::kmeans;
  else if (cluster_method == "pam")
    opt.assign = AssignMethod::pam;
  else
    opt.assign = AssignMethod::gibbs;
  return opt;
}

}  // namespace mjps
