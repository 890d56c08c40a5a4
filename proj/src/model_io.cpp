#include "solarcast/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace solarcast {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix<double>& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector<double>& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

const json& member(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw DataError(std::string("model document lacks field '") + name + "'");
    return *it;
}

Matrix<double> matrix_from_json(const json& j, const char* name) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw DataError(std::string("field '") + name + "' must be a nonempty array of rows");
    const auto rows = static_cast<Index>(j.size());
    const auto cols = static_cast<Index>(j.front().size());
    Matrix<double> m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw DataError(std::string("field '") + name + "' has ragged rows");
        for (Index c = 0; c < cols; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_number())
                throw DataError(std::string("field '") + name + "' has a non-numeric entry");
            m(r, c) = cell.get<double>();
        }
    }
    return m;
}

Vector<double> vector_from_json(const json& j, const char* name) {
    if (!j.is_array() || j.empty())
        throw DataError(std::string("field '") + name + "' must be a nonempty array");
    Vector<double> v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) {
        const json& cell = j[static_cast<std::size_t>(i)];
        if (!cell.is_number())
            throw DataError(std::string("field '") + name + "' has a non-numeric entry");
        v(i) = cell.get<double>();
    }
    return v;
}

json cfg_to_json(const ExpansionConfig& cfg) {
    return json{{"order_p", cfg.order_p}, {"include_bias", cfg.include_bias}, {"n", cfg.n}};
}

ExpansionConfig cfg_from_json(const json& j) {
    ExpansionConfig cfg;
    cfg.order_p = member(j, "order_p").get<int>();
    cfg.include_bias = member(j, "include_bias").get<bool>();
    cfg.n = member(j, "n").get<Index>();
    cfg.validate();
    return cfg;
}

} // namespace

nlohmann::json model_to_json(const ModelState<double>& state) {
    json doc;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FlnnState<double>>) {
                doc["model"] = "flnn";
                doc["weights"] = matrix_to_json(s.weights);
                doc["learning_rate"] = s.learning_rate;
                doc["epochs"] = s.epochs;
                doc["cfg"] = cfg_to_json(s.cfg);
            } else if constexpr (std::is_same_v<T, ElmState<double>>) {
                doc["model"] = "elm";
                doc["input_weights"] = matrix_to_json(s.input_weights);
                doc["biases"] = vector_to_json(s.biases);
                doc["output_weights"] = matrix_to_json(s.output_weights);
                doc["hidden_count"] = s.hidden_count;
                doc["seed"] = s.seed;
            } else {
                doc["model"] = "eelm";
                doc["output_weights"] = matrix_to_json(s.output_weights);
                doc["cfg"] = cfg_to_json(s.cfg);
            }
        },
        state);
    return doc;
}

ModelState<double> model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw DataError("model document must be a JSON object");
    const std::string kind = member(doc, "model").get<std::string>();
    if (kind == "flnn") {
        FlnnState<double> s;
        s.cfg = cfg_from_json(member(doc, "cfg"));
        s.weights = matrix_from_json(member(doc, "weights"), "weights");
        s.learning_rate = member(doc, "learning_rate").get<double>();
        s.epochs = member(doc, "epochs").get<int>();
        if (s.weights.rows() != s.cfg.width())
            throw DataError("weight rows do not match the expansion width");
        return s;
    }
    if (kind == "elm") {
        ElmState<double> s;
        s.input_weights = matrix_from_json(member(doc, "input_weights"), "input_weights");
        s.biases = vector_from_json(member(doc, "biases"), "biases");
        s.output_weights = matrix_from_json(member(doc, "output_weights"), "output_weights");
        s.hidden_count = member(doc, "hidden_count").get<Index>();
        s.seed = member(doc, "seed").get<std::uint64_t>();
        if (s.input_weights.rows() != s.hidden_count || s.biases.size() != s.hidden_count ||
            s.output_weights.rows() != s.hidden_count)
            throw DataError("hidden layer shapes are inconsistent");
        return s;
    }
    if (kind == "eelm") {
        EelmState<double> s;
        s.cfg = cfg_from_json(member(doc, "cfg"));
        s.output_weights = matrix_from_json(member(doc, "output_weights"), "output_weights");
        if (s.output_weights.rows() != s.cfg.width())
            throw DataError("output weight rows do not match the expansion width");
        return s;
    }
    throw DataError("unknown model kind '" + kind + "'");
}

void save_model(const std::filesystem::path& path, const ModelState<double>& state,
                const std::optional<PipelineInfo>& pipeline) {
    json doc = model_to_json(state);
    if (pipeline) {
        doc["pipeline"] = json{{"window", pipeline->window},
                               {"outputs", pipeline->outputs},
                               {"scale", json{{"x_min", pipeline->scale.x_min},
                                              {"x_max", pipeline->scale.x_max}}},
                               {"season", pipeline->season},
                               {"horizon", pipeline->horizon}};
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

SavedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("invalid model file '" + path.string() + "': " + e.what());
    }
    SavedModel saved{model_from_json(doc), std::nullopt};
    if (auto it = doc.find("pipeline"); it != doc.end()) {
        PipelineInfo info;
        info.window = member(*it, "window").get<int>();
        info.outputs = member(*it, "outputs").get<int>();
        const json& scale = member(*it, "scale");
        info.scale = ScaleParams{member(scale, "x_min").get<double>(),
                                 member(scale, "x_max").get<double>()};
        info.season = member(*it, "season").get<std::string>();
        info.horizon = member(*it, "horizon").get<std::string>();
        saved.pipeline = std::move(info);
    }
    return saved;
}

} // namespace solarcast
