#include "solarcast/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace solarcast {
namespace {

using nlohmann::json;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cell_tag(Season season, Resolution horizon, ModelKind model) {
    return std::string("[") + season_name(season) + "/" + resolution_name(horizon) + "/" +
           model_name(model) + "] ";
}

struct TrainedCell {
    ModelState<double> state;
    double training_time = 0.0;
    double training_rmse = 0.0;
    double test_rmse = 0.0;
    Matrix<double> predictions;
    Index elm_hidden = 0;
    std::uint64_t elm_seed = 0;
};

TrainedCell fit_one(ModelKind model, const PatternSet<double>& train,
                    const PatternSet<double>& test, const Hyperparams& hp, std::uint64_t seed,
                    Index elm_hidden) {
    const ExpansionConfig cfg{hp.order_p, true, train.window()};
    TrainedCell cell;
    TrainOutcome<double> outcome;
    switch (model) {
    case ModelKind::Flnn: {
        FlnnOptions<double> opts;
        opts.learning_rate = hp.learning_rate;
        opts.epochs = hp.epochs;
        outcome = flnn_train(train, cfg, opts);
        break;
    }
    case ModelKind::Elm:
        outcome = elm_train(train, elm_hidden, seed, hp.ridge_lambda);
        cell.elm_hidden = elm_hidden;
        cell.elm_seed = seed;
        break;
    case ModelKind::Eelm:
        outcome = eelm_train(train, cfg, hp.ridge_lambda);
        break;
    }
    cell.training_time = outcome.training_time;
    cell.training_rmse = outcome.training_rmse;
    cell.predictions = predict(outcome.state, test.inputs);
    cell.test_rmse = rmse(cell.predictions, test.targets);
    cell.state = std::move(outcome.state);
    return cell;
}

// Best test RMSE over the hidden-size sweep; ties keep the smaller layer.
TrainedCell fit_elm_sweep(const PatternSet<double>& train, const PatternSet<double>& test,
                          const Hyperparams& hp, std::uint64_t seed) {
    TrainedCell best;
    bool have = false;
    for (Index hidden : hp.elm_hidden_sweep) {
        TrainedCell cand = fit_one(ModelKind::Elm, train, test, hp, seed, hidden);
        if (!have || cand.test_rmse < best.test_rmse) {
            best = std::move(cand);
            have = true;
        }
    }
    if (!have) throw DataError("the hidden-size sweep is empty");
    return best;
}

CellResult run_cell(Season season, Resolution horizon, ModelKind model, const TimeSeries& base,
                    const Hyperparams& hp, int timing_repeats) {
    const TimeSeries seasonal = filter_season(base, season_window(season));
    const TimeSeries working =
        horizon == Resolution::OneHour ? resample_hourly(seasonal) : seasonal;

    const auto scale_count =
        hp.scale_on_train_only
            ? static_cast<std::size_t>(hp.train_fraction * static_cast<double>(working.size()))
            : working.size();
    const ScaleParams sp = fit_scale(working, scale_count);
    const TimeSeries scaled = apply_scale(working, sp);

    const PatternSet<double> patterns = make_patterns(scaled, hp.window, hp.outputs);
    const auto [train, test] = split_patterns(patterns, hp.train_fraction);

    CellResult out;
    out.season = season;
    out.horizon = horizon;
    out.model = model;

    TrainedCell fitted;
    if (model == ModelKind::Elm && hp.elm_trials > 1) {
        std::vector<TrainedCell> trials;
        trials.reserve(static_cast<std::size_t>(hp.elm_trials));
        for (int t = 0; t < hp.elm_trials; ++t)
            trials.push_back(fit_elm_sweep(train, test, hp, hp.seed + static_cast<std::uint64_t>(t)));

        double mean = 0.0;
        for (const TrainedCell& c : trials) mean += c.test_rmse;
        mean /= static_cast<double>(trials.size());
        double var = 0.0;
        for (const TrainedCell& c : trials) var += (c.test_rmse - mean) * (c.test_rmse - mean);
        var /= static_cast<double>(trials.size() - 1);
        out.elm_rmse_mean = mean;
        out.elm_rmse_std = std::sqrt(var);

        // The reported cell is the median-RMSE trial, so the trace stays an
        // actual run rather than an average of runs.
        std::vector<std::size_t> order(trials.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (trials[a].test_rmse != trials[b].test_rmse)
                return trials[a].test_rmse < trials[b].test_rmse;
            return a < b;
        });
        fitted = std::move(trials[order[(order.size() - 1) / 2]]);
    } else if (model == ModelKind::Elm) {
        fitted = fit_elm_sweep(train, test, hp, hp.seed);
    } else {
        fitted = fit_one(model, train, test, hp, hp.seed, 0);
    }

    double tt = fitted.training_time;
    if (timing_repeats > 1) {
        const PatternSet<double>& trn = train; // clang structured-binding capture
        const PatternSet<double>& tst = test;
        tt = measure_tt(
            [&] { fit_one(model, trn, tst, hp, fitted.elm_seed, fitted.elm_hidden); },
            timing_repeats);
    }

    out.report = evaluate(test.targets, fitted.predictions, tt);
    out.training_rmse = fitted.training_rmse;
    out.elm_hidden = fitted.elm_hidden;
    out.elm_seed = fitted.elm_seed;
    out.target_times = test.target_times;
    out.targets = test.targets.col(0);
    out.predictions = fitted.predictions.col(0);
    return out;
}

void write_trace(const CellResult& cell, const std::filesystem::path& dir) {
    const std::string name = std::string("trace_") + season_name(cell.season) + "_" +
                             resolution_name(cell.horizon) + "_" + model_name(cell.model) +
                             ".csv";
    std::ofstream out(dir / name);
    if (!out) throw DataError("cannot write trace file '" + (dir / name).string() + "'");
    out << "timestamp,target,prediction\n";
    for (Index i = 0; i < cell.targets.size(); ++i)
        out << format_timestamp(cell.target_times[static_cast<std::size_t>(i)]) << ','
            << full(cell.targets(i)) << ',' << full(cell.predictions(i)) << '\n';
}

const std::array<std::pair<const char*, int>, 5> kMetricRows{{
    {"RMSE (p.u)", 4},
    {"MAE (p.u)", 4},
    {"SMAPE (%)", 2},
    {"CC2", 4},
    {"TT (sec)", 2},
}};

double metric_value(const EvalReport& r, std::size_t row) {
    switch (row) {
    case 0: return r.rmse;
    case 1: return r.mae;
    case 2: return r.smape;
    case 3: return r.cc2;
    default: return r.training_time;
    }
}

const char* horizon_display(Resolution r) {
    return r == Resolution::FiveMinute ? "5 min." : "1 hour";
}

// Distinct values in first-appearance order, mirroring the run's ordering.
template <typename T, typename F>
std::vector<T> ordered_distinct(const std::vector<CellResult>& cells, F pick) {
    std::vector<T> out;
    for (const CellResult& c : cells)
        if (std::find(out.begin(), out.end(), pick(c)) == out.end()) out.push_back(pick(c));
    return out;
}

const CellResult* find_cell(const ResultTable& rt, Season s, Resolution h, ModelKind m) {
    for (const CellResult& c : rt.cells)
        if (c.season == s && c.horizon == h && c.model == m) return &c;
    return nullptr;
}

} // namespace

const char* model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::Flnn: return "flnn";
    case ModelKind::Elm: return "elm";
    default: return "eelm";
    }
}

const char* model_display(ModelKind kind) {
    switch (kind) {
    case ModelKind::Flnn: return "FLNN";
    case ModelKind::Elm: return "ELM";
    default: return "EELM";
    }
}

const char* season_display(Season season) {
    switch (season) {
    case Season::Summer: return "Summer";
    case Season::Rainy: return "Rainy";
    default: return "Winter";
    }
}

Season parse_season(const std::string& name) {
    if (name == "summer") return Season::Summer;
    if (name == "rainy") return Season::Rainy;
    if (name == "winter") return Season::Winter;
    throw DataError("unknown season '" + name + "' (expected summer, rainy, or winter)");
}

Resolution parse_resolution(const std::string& name) {
    if (name == "5min") return Resolution::FiveMinute;
    if (name == "1h") return Resolution::OneHour;
    throw DataError("unknown horizon '" + name + "' (expected 5min or 1h)");
}

ModelKind parse_model(const std::string& name) {
    if (name == "flnn") return ModelKind::Flnn;
    if (name == "elm") return ModelKind::Elm;
    if (name == "eelm") return ModelKind::Eelm;
    throw DataError("unknown model '" + name + "' (expected flnn, elm, or eelm)");
}

ResultTable run_experiment(const ExperimentSpec& spec) {
    if (spec.seasons.empty() || spec.horizons.empty() || spec.models.empty())
        throw DataError("the experiment needs at least one season, horizon, and model");

    std::optional<TimeSeries> csv_series;
    if (!spec.data.csv_path.empty()) csv_series = parse_csv(spec.data.csv_path, Resolution::FiveMinute);

    ResultTable rt;
    for (Season season : spec.seasons) {
        const TimeSeries base = csv_series
                                    ? *csv_series
                                    : generate_synthetic(spec.data.synthetic_days, season,
                                                         spec.data.synthetic_seed);
        for (Resolution horizon : spec.horizons) {
            for (ModelKind model : spec.models) {
                try {
                    rt.cells.push_back(
                        run_cell(season, horizon, model, base, spec.hyper, spec.timing_repeats));
                } catch (const NumericError& e) {
                    throw NumericError(cell_tag(season, horizon, model) + e.what());
                } catch (const DataError& e) {
                    throw DataError(cell_tag(season, horizon, model) + e.what());
                }
            }
        }
    }

    if (!spec.output_dir.empty()) emit_plot_data(rt, spec.output_dir);
    return rt;
}

std::string emit_table(const ResultTable& rt, TableFormat format) {
    if (rt.cells.empty()) throw EmptyInput("the result table has no cells");

    const auto seasons = ordered_distinct<Season>(rt.cells, [](const CellResult& c) { return c.season; });
    const auto horizons =
        ordered_distinct<Resolution>(rt.cells, [](const CellResult& c) { return c.horizon; });
    const auto models =
        ordered_distinct<ModelKind>(rt.cells, [](const CellResult& c) { return c.model; });

    std::ostringstream out;
    if (format == TableFormat::Json) {
        json cells = json::array();
        for (const CellResult& c : rt.cells) {
            json cell{{"season", season_name(c.season)},
                      {"horizon", resolution_name(c.horizon)},
                      {"model", model_name(c.model)},
                      {"rmse", c.report.rmse},
                      {"mae", c.report.mae},
                      {"smape", c.report.smape},
                      {"cc2", c.report.cc2},
                      {"training_time", c.report.training_time},
                      {"n_points", c.report.n_points},
                      {"training_rmse", c.training_rmse}};
            if (c.model == ModelKind::Elm) {
                cell["elm_hidden"] = c.elm_hidden;
                cell["elm_seed"] = c.elm_seed;
                if (c.elm_rmse_mean) cell["elm_rmse_mean"] = *c.elm_rmse_mean;
                if (c.elm_rmse_std) cell["elm_rmse_std"] = *c.elm_rmse_std;
            }
            cells.push_back(std::move(cell));
        }
        out << json{{"cells", std::move(cells)}}.dump(2) << '\n';
        return out.str();
    }

    if (format == TableFormat::Csv) {
        out << "season,performance_index,time_horizon";
        for (ModelKind m : models) out << ',' << model_display(m);
        out << '\n';
        for (Season s : seasons)
            for (std::size_t row = 0; row < kMetricRows.size(); ++row)
                for (Resolution h : horizons) {
                    out << season_name(s) << ',' << kMetricRows[row].first << ','
                        << horizon_display(h);
                    for (ModelKind m : models) {
                        const CellResult* c = find_cell(rt, s, h, m);
                        out << ','
                            << (c ? fixed(metric_value(c->report, row), kMetricRows[row].second)
                                  : "-");
                    }
                    out << '\n';
                }
        return out.str();
    }

    bool first = true;
    for (Season s : seasons) {
        if (!first) out << '\n';
        first = false;
        out << "## " << season_display(s) << "\n\n";
        out << "| Performance Index | Time Horizon |";
        for (ModelKind m : models) out << ' ' << model_display(m) << " |";
        out << "\n|---|---|";
        for (std::size_t i = 0; i < models.size(); ++i) out << "---|";
        out << '\n';
        for (std::size_t row = 0; row < kMetricRows.size(); ++row)
            for (Resolution h : horizons) {
                out << "| " << kMetricRows[row].first << " | " << horizon_display(h) << " |";
                for (ModelKind m : models) {
                    const CellResult* c = find_cell(rt, s, h, m);
                    out << ' '
                        << (c ? fixed(metric_value(c->report, row), kMetricRows[row].second)
                              : "-")
                        << " |";
                }
                out << '\n';
            }
    }
    return out.str();
}

void emit_plot_data(const ResultTable& rt, const std::filesystem::path& output_dir) {
    if (rt.cells.empty()) throw EmptyInput("the result table has no cells");
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + output_dir.string() + "'");

    std::ofstream bars(output_dir / "rmse_bars.csv");
    if (!bars)
        throw DataError("cannot write '" + (output_dir / "rmse_bars.csv").string() + "'");
    bars << "season,horizon,model,rmse\n";
    for (const CellResult& c : rt.cells) {
        bars << season_name(c.season) << ',' << resolution_name(c.horizon) << ','
             << model_name(c.model) << ',' << full(c.report.rmse) << '\n';
        write_trace(c, output_dir);
    }
}

double measure_tt(const std::function<void()>& fit, int repeat) {
    if (repeat < 1) throw DataError("repeat count must be positive");
    std::vector<double> runs;
    runs.reserve(static_cast<std::size_t>(repeat));
    for (int i = 0; i < repeat; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fit();
        runs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count());
    }
    std::sort(runs.begin(), runs.end());
    const std::size_t mid = runs.size() / 2;
    const double median =
        runs.size() % 2 == 1 ? runs[mid] : 0.5 * (runs[mid - 1] + runs[mid]);
    return std::round(median * 1000.0) / 1000.0;
}

ExperimentSpec parse_spec_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open spec file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("invalid spec file '" + path.string() + "': " + e.what());
    }
    if (!doc.is_object()) throw DataError("the spec document must be a JSON object");

    static const std::vector<std::string> top_keys{"data",   "seasons",    "horizons",
                                                   "models", "hyperparams", "output_dir",
                                                   "timing_repeats"};
    for (const auto& [key, _] : doc.items())
        if (std::find(top_keys.begin(), top_keys.end(), key) == top_keys.end())
            throw DataError("unknown spec key '" + key + "'");

    ExperimentSpec spec;
    if (auto it = doc.find("data"); it != doc.end()) {
        const json& data = *it;
        const bool has_csv = data.contains("csv");
        const bool has_synth = data.contains("synthetic");
        if (has_csv == has_synth)
            throw DataError("data must hold exactly one of 'csv' or 'synthetic'");
        if (has_csv) {
            spec.data.csv_path = data["csv"].get<std::string>();
        } else {
            const json& synth = data["synthetic"];
            if (synth.contains("days")) spec.data.synthetic_days = synth["days"].get<int>();
            if (synth.contains("seed"))
                spec.data.synthetic_seed = synth["seed"].get<std::uint64_t>();
            if (spec.data.synthetic_days < 1)
                throw DataError("synthetic day count must be positive");
        }
    }

    const auto parse_list = [&](const char* key, auto parse_one, auto& into) {
        auto it = doc.find(key);
        if (it == doc.end()) return;
        if (!it->is_array() || it->empty())
            throw DataError(std::string("'") + key + "' must be a nonempty array");
        into.clear();
        for (const json& name : *it) into.push_back(parse_one(name.get<std::string>()));
    };
    parse_list("seasons", parse_season, spec.seasons);
    parse_list("horizons", parse_resolution, spec.horizons);
    parse_list("models", parse_model, spec.models);

    if (auto it = doc.find("hyperparams"); it != doc.end()) {
        const json& hp = *it;
        static const std::vector<std::string> hp_keys{
            "order_p",      "elm_hidden_sweep", "learning_rate",       "epochs",
            "train_fraction", "ridge_lambda",   "seed",                "elm_trials",
            "scale_on_train_only", "window",    "outputs"};
        for (const auto& [key, _] : hp.items())
            if (std::find(hp_keys.begin(), hp_keys.end(), key) == hp_keys.end())
                throw DataError("unknown hyperparameter '" + key + "'");
        Hyperparams& h = spec.hyper;
        if (hp.contains("order_p")) h.order_p = hp["order_p"].get<int>();
        if (hp.contains("elm_hidden_sweep")) {
            h.elm_hidden_sweep.clear();
            for (const json& v : hp["elm_hidden_sweep"]) h.elm_hidden_sweep.push_back(v.get<Index>());
            if (h.elm_hidden_sweep.empty()) throw DataError("elm_hidden_sweep must be nonempty");
        }
        if (hp.contains("learning_rate")) h.learning_rate = hp["learning_rate"].get<double>();
        if (hp.contains("epochs")) h.epochs = hp["epochs"].get<int>();
        if (hp.contains("train_fraction")) h.train_fraction = hp["train_fraction"].get<double>();
        if (hp.contains("ridge_lambda")) h.ridge_lambda = hp["ridge_lambda"].get<double>();
        if (hp.contains("seed")) h.seed = hp["seed"].get<std::uint64_t>();
        if (hp.contains("elm_trials")) h.elm_trials = hp["elm_trials"].get<int>();
        if (hp.contains("scale_on_train_only"))
            h.scale_on_train_only = hp["scale_on_train_only"].get<bool>();
        if (hp.contains("window")) h.window = hp["window"].get<Index>();
        if (hp.contains("outputs")) h.outputs = hp["outputs"].get<Index>();
        if (h.elm_trials < 1) throw DataError("elm_trials must be positive");
    }

    if (auto it = doc.find("output_dir"); it != doc.end())
        spec.output_dir = it->get<std::string>();
    if (auto it = doc.find("timing_repeats"); it != doc.end()) {
        spec.timing_repeats = it->get<int>();
        if (spec.timing_repeats < 1) throw DataError("timing_repeats must be positive");
    }
    return spec;
}

} // namespace solarcast
