#include "mjpslice/model_factory.hpp"

#include "mjpslice/errors.hpp"

namespace mjps {

namespace {

void reject_unknown_keys(const nlohmann::json& params,
                         std::initializer_list<const char*> known) {
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError("unknown model_params key: " + it.key());
  }
}

template <typename T>
T get_or(const nlohmann::json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<T>();
}

}  // namespace

std::unique_ptr<GeneratorModel> make_model(const std::string& name,
                                           const nlohmann::json& model_params) {
  if (!model_params.is_object() && !model_params.is_null())
    throw ConfigError("model_params must be an object");
  const nlohmann::json params = model_params.is_null() ? nlohmann::json::object() : model_params;

  if (name == "toy3") {
    reject_unknown_keys(params, {});
    return std::make_unique<ToyThreeState>();
  }
  if (name == "birth_death") {
    reject_unknown_keys(params, {"x0"});
    return std::make_unique<BirthDeath>(get_or<std::int64_t>(params, "x0", 0));
  }
  if (name == "hospital_mmpp") {
    reject_unknown_keys(params, {"mu", "nu", "L1", "L2"});
    return std::make_unique<HospitalMmpp>(
        get_or<double>(params, "mu", 0.5), get_or<double>(params, "nu", 1.0 / 12.0),
        get_or<std::int64_t>(params, "L1", 10), get_or<std::int64_t>(params, "L2", 3));
  }
  if (name == "tandem") {
    reject_unknown_keys(params, {"lambda", "mu2"});
    return std::make_unique<TandemQueue>(get_or<double>(params, "lambda", 1.0),
                                         get_or<double>(params, "mu2", 2.0));
  }
  throw ConfigError("unknown model: " + name +
                    " (expected toy3, birth_death, hospital_mmpp, tandem)");
}

std::map<std::int32_t, double> model_tag_q_z(const GeneratorModel& model) {
  if (const auto* hospital = dynamic_cast<const HospitalMmpp*>(&model))
    return hospital->default_tag_q_z();
  return {};
}

}  // namespace mjps
