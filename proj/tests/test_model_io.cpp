#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "testutil.hpp"

#include "solarcast/model_io.hpp"
#include "solarcast/synthetic.hpp"

using namespace solarcast;

namespace {

PatternSet<double> small_patterns() {
    TimeSeries ts = generate_synthetic(2, Season::Summer, 7);
    ts = filter_season(ts, season_window(Season::Summer));
    return make_patterns(apply_scale(ts, fit_scale(ts)), 5, 1);
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("each model state round-trips exactly through JSON") {
    const PatternSet<double> ps = small_patterns();
    const ExpansionConfig cfg{1, true, 5};

    SUBCASE("flnn") {
        FlnnOptions<double> opts;
        opts.epochs = 3;
        const auto state = std::get<FlnnState<double>>(flnn_train(ps, cfg, opts).state);
        const auto back =
            std::get<FlnnState<double>>(model_from_json(model_to_json(ModelState<double>(state))));
        CHECK((back.weights.array() == state.weights.array()).all());
        CHECK(back.learning_rate == state.learning_rate);
        CHECK(back.epochs == state.epochs);
        CHECK(back.cfg.order_p == cfg.order_p);
        CHECK(back.cfg.include_bias == cfg.include_bias);
        CHECK(back.cfg.n == cfg.n);
    }
    SUBCASE("elm") {
        const auto state = std::get<ElmState<double>>(elm_train(ps, Index(8), 19).state);
        const auto back =
            std::get<ElmState<double>>(model_from_json(model_to_json(ModelState<double>(state))));
        CHECK((back.input_weights.array() == state.input_weights.array()).all());
        CHECK((back.biases.array() == state.biases.array()).all());
        CHECK((back.output_weights.array() == state.output_weights.array()).all());
        CHECK(back.hidden_count == 8);
        CHECK(back.seed == 19);
    }
    SUBCASE("eelm") {
        const auto state = std::get<EelmState<double>>(eelm_train(ps, cfg).state);
        const auto back =
            std::get<EelmState<double>>(model_from_json(model_to_json(ModelState<double>(state))));
        CHECK((back.output_weights.array() == state.output_weights.array()).all());
    }
}

TEST_CASE("documents carry the expected field names") {
    const PatternSet<double> ps = small_patterns();
    const auto elm_doc = model_to_json(elm_train(ps, Index(4), 1).state);
    CHECK(elm_doc["model"] == "elm");
    CHECK(elm_doc.contains("input_weights"));
    CHECK(elm_doc.contains("biases"));
    CHECK(elm_doc.contains("output_weights"));
    CHECK(elm_doc.contains("hidden_count"));
    CHECK(elm_doc.contains("seed"));

    const ExpansionConfig cfg{1, true, 5};
    const auto eelm_doc = model_to_json(eelm_train(ps, cfg).state);
    CHECK(eelm_doc["model"] == "eelm");
    CHECK(eelm_doc.contains("output_weights"));
    CHECK(eelm_doc["cfg"].contains("order_p"));
    CHECK(eelm_doc["cfg"].contains("include_bias"));
    CHECK(eelm_doc["cfg"].contains("n"));

    FlnnOptions<double> opts;
    opts.epochs = 2;
    const auto flnn_doc = model_to_json(flnn_train(ps, cfg, opts).state);
    CHECK(flnn_doc["model"] == "flnn");
    CHECK(flnn_doc.contains("weights"));
    CHECK(flnn_doc.contains("learning_rate"));
    CHECK(flnn_doc.contains("epochs"));
}

TEST_CASE("save and load round-trip through a file with the pipeline block") {
    const PatternSet<double> ps = small_patterns();
    const ExpansionConfig cfg{1, true, 5};
    const ModelState<double> state = eelm_train(ps, cfg).state;

    PipelineInfo info;
    info.window = 5;
    info.outputs = 1;
    info.scale = ScaleParams{0.0, 23.5};
    info.season = "summer";
    info.horizon = "5min";

    const auto path = temp_file("solarcast_model_io_test.json");
    save_model(path, state, info);
    const SavedModel saved = load_model(path);
    std::filesystem::remove(path);

    REQUIRE(saved.pipeline.has_value());
    CHECK(saved.pipeline->window == 5);
    CHECK(saved.pipeline->outputs == 1);
    CHECK(saved.pipeline->scale.x_min == 0.0);
    CHECK(saved.pipeline->scale.x_max == 23.5);
    CHECK(saved.pipeline->season == "summer");
    CHECK(saved.pipeline->horizon == "5min");

    const auto& original = std::get<EelmState<double>>(state);
    const auto& back = std::get<EelmState<double>>(saved.state);
    CHECK((back.output_weights.array() == original.output_weights.array()).all());
}

TEST_CASE("malformed documents are rejected as data errors") {
    using nlohmann::json;
    CHECK_THROWS_AS(model_from_json(json{{"model", "unknown"}}), DataError);
    CHECK_THROWS_AS(model_from_json(json::array()), DataError);
    CHECK_THROWS_AS(model_from_json(json{{"model", "eelm"}}), DataError); // missing fields

    json ragged{{"model", "eelm"},
                {"cfg", {{"order_p", 1}, {"include_bias", true}, {"n", 1}}},
                {"output_weights", json::array({json::array({1.0}), json::array({1.0, 2.0})})}};
    CHECK_THROWS_AS(model_from_json(ragged), DataError);

    CHECK_THROWS_AS(load_model("/nonexistent/state.json"), DataError);

    const auto path = temp_file("solarcast_model_io_bad.json");
    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(load_model(path), DataError);
    std::filesystem::remove(path);
}
