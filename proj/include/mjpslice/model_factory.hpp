#ifndef MJPSLICE_MODEL_FACTORY_HPP
#define MJPSLICE_MODEL_FACTORY_HPP

#include <memory>
#include <string>

#include <json.hpp>

#include "mjpslice/models.hpp"

namespace mjps {

// Build a zoo model by config name. Unknown model names and unknown
// model_params keys are config errors.
std::unique_ptr<GeneratorModel> make_model(const std::string& name,
                                           const nlohmann::json& model_params);

// The per-tag retrieval probabilities a model pins (fully or never observed
// channels); empty for models whose channels all follow the run-level q_z.
std::map<std::int32_t, double> model_tag_q_z(const GeneratorModel& model);

}  // namespace mjps

#endif
