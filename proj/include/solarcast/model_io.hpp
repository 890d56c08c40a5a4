#pragma once

// JSON persistence for trained model states, used by the CLI's train and
// predict commands. Matrices serialize as arrays of rows, vectors as flat
// arrays; doubles round-trip exactly.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "solarcast/models.hpp"
#include "solarcast/time_series.hpp"

namespace solarcast {

// Everything the predict command needs to rebuild the data pipeline that
// produced the training patterns.
struct PipelineInfo {
    int window = 5;
    int outputs = 1;
    ScaleParams scale{0.0, 1.0};
    std::string season;  // empty = no seasonal filter
    std::string horizon; // "5min" or "1h"
};

struct SavedModel {
    ModelState<double> state;
    std::optional<PipelineInfo> pipeline;
};

nlohmann::json model_to_json(const ModelState<double>& state);
ModelState<double> model_from_json(const nlohmann::json& doc);

void save_model(const std::filesystem::path& path, const ModelState<double>& state,
                const std::optional<PipelineInfo>& pipeline = std::nullopt);
SavedModel load_model(const std::filesystem::path& path);

} // namespace solarcast
