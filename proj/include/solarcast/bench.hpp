#pragma once

// Experiment harness: runs the season x horizon x model matrix, collects
// one EvalReport per cell, and renders tables plus plot-ready CSV files.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solarcast/metrics.hpp"
#include "solarcast/models.hpp"
#include "solarcast/synthetic.hpp"
#include "solarcast/time_series.hpp"

namespace solarcast {

enum class ModelKind { Flnn, Elm, Eelm };

const char* model_name(ModelKind kind);    // "flnn", "elm", "eelm"
const char* model_display(ModelKind kind); // "FLNN", "ELM", "EELM"
const char* season_display(Season season); // "Summer", "Rainy", "Winter"

Season parse_season(const std::string& name);         // "summer" | "rainy" | "winter"
Resolution parse_resolution(const std::string& name); // "5min" | "1h"
ModelKind parse_model(const std::string& name);       // "flnn" | "elm" | "eelm"

struct Hyperparams {
    int order_p = 1;
    std::vector<Index> elm_hidden_sweep{10, 20, 40, 80};
    double learning_rate = 0.01;
    int epochs = 100;
    double train_fraction = 0.8;
    double ridge_lambda = 0.0;
    std::uint64_t seed = 0;
    int elm_trials = 1;
    bool scale_on_train_only = true;
    Index window = 5;
    Index outputs = 1;
};

// Either a CSV of raw five-minute power or a per-season synthetic set.
struct DataSource {
    std::string csv_path;     // empty selects synthetic data
    int synthetic_days = 120; // days per season
    std::uint64_t synthetic_seed = 7;
};

struct ExperimentSpec {
    DataSource data;
    std::vector<Season> seasons{Season::Summer, Season::Rainy, Season::Winter};
    std::vector<Resolution> horizons{Resolution::FiveMinute, Resolution::OneHour};
    std::vector<ModelKind> models{ModelKind::Flnn, ModelKind::Elm, ModelKind::Eelm};
    Hyperparams hyper;
    std::filesystem::path output_dir; // empty skips trace writing
    int timing_repeats = 1;
};

struct CellResult {
    Season season = Season::Summer;
    Resolution horizon = Resolution::FiveMinute;
    ModelKind model = ModelKind::Flnn;
    EvalReport report;
    double training_rmse = 0.0;
    Index elm_hidden = 0;       // winning L, ELM cells only
    std::uint64_t elm_seed = 0; // seed of the reported trial
    std::optional<double> elm_rmse_mean; // across trials when elm_trials > 1
    std::optional<double> elm_rmse_std;
    std::vector<Timestamp> target_times;
    Vector<double> targets;     // test targets, first output
    Vector<double> predictions; // matching predictions
};

struct ResultTable {
    std::vector<CellResult> cells;
};

enum class TableFormat { Markdown, Csv, Json };

/// Full pipeline per cell: ingest, season filter, optional hourly
/// resample, scale, window, split, train, evaluate on the test split.
/// ELM cells keep the best test-RMSE hidden size from the sweep.
ResultTable run_experiment(const ExperimentSpec& spec);

std::string emit_table(const ResultTable& rt, TableFormat format);

/// Writes rmse_bars.csv plus one trace_<season>_<horizon>_<model>.csv
/// per cell into output_dir.
void emit_plot_data(const ResultTable& rt, const std::filesystem::path& output_dir);

/// Median wall-clock seconds of `fit` over `repeat` runs, millisecond
/// resolution.
double measure_tt(const std::function<void()>& fit, int repeat = 1);

ExperimentSpec parse_spec_json(const std::filesystem::path& path);

} // namespace solarcast
