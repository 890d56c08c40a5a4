// Command-line front end: ingest | synth | train | predict | bench.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "solarcast/bench.hpp"
#include "solarcast/model_io.hpp"

namespace {

using namespace solarcast;

void run_ingest(const std::string& path, const std::string& resolution) {
    const Resolution res = parse_resolution(resolution);
    const TimeSeries ts = parse_csv(path, res);
    const auto blocks = contiguous_blocks(ts);

    double lo = ts.samples.front().power_mw;
    double hi = lo;
    for (const Sample& s : ts.samples) {
        lo = std::min(lo, s.power_mw);
        hi = std::max(hi, s.power_mw);
    }

    std::cout << "file: " << path << '\n'
              << "resolution: " << resolution_name(res) << '\n'
              << "samples: " << ts.size() << '\n'
              << "span: " << format_timestamp(ts.samples.front().time) << " .. "
              << format_timestamp(ts.samples.back().time) << '\n'
              << "power_mw: " << lo << " .. " << hi << '\n'
              << "contiguous blocks: " << blocks.size() << '\n';
    for (Season season : {Season::Summer, Season::Rainy, Season::Winter}) {
        std::size_t kept = 0;
        try {
            kept = filter_season(ts, season_window(season)).size();
        } catch (const EmptyResult&) {
        }
        std::cout << season_name(season) << " daylight samples: " << kept << '\n';
    }
}

void run_synth(int days, const std::string& season, std::uint64_t seed, bool clear_sky,
               double peak_mw, const std::string& out) {
    SyntheticConfig cfg;
    cfg.days = days;
    cfg.seed = seed;
    cfg.clear_sky = clear_sky;
    cfg.peak_mw = peak_mw;

    TimeSeries ts;
    if (season == "all") {
        // Per-season starts fall in one calendar year only while each
        // season stays within its first stretch of months.
        if (days > 120)
            throw DataError("--season all supports at most 120 days per season");
        for (Season s : {Season::Summer, Season::Rainy, Season::Winter}) {
            cfg.season = s;
            TimeSeries part = generate_synthetic(cfg);
            ts.samples.insert(ts.samples.end(), part.samples.begin(), part.samples.end());
        }
    } else {
        cfg.season = parse_season(season);
        ts = generate_synthetic(cfg);
    }
    write_csv(ts, out);
    std::cout << "wrote " << ts.size() << " samples to " << out << '\n';
}

struct TrainArgs {
    std::string data;
    std::string model;
    std::string season; // empty = no filter
    std::string horizon = "5min";
    std::string out;
    Index window = 5;
    Index outputs = 1;
    int order_p = 1;
    Index hidden = 20;
    double learning_rate = 0.01;
    int epochs = 100;
    double ridge = 0.0;
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool scale_all = false;
};

void run_train(const TrainArgs& a) {
    const ModelKind kind = parse_model(a.model);
    const Resolution horizon = parse_resolution(a.horizon);

    TimeSeries working = parse_csv(a.data, Resolution::FiveMinute);
    if (!a.season.empty()) working = filter_season(working, season_window(parse_season(a.season)));
    if (horizon == Resolution::OneHour) working = resample_hourly(working);

    const auto scale_count =
        a.scale_all ? working.size()
                    : static_cast<std::size_t>(a.train_fraction *
                                               static_cast<double>(working.size()));
    const ScaleParams sp = fit_scale(working, scale_count);
    const TimeSeries scaled = apply_scale(working, sp);
    const PatternSet<double> patterns = make_patterns(scaled, a.window, a.outputs);
    const auto [train, test] = split_patterns(patterns, a.train_fraction);

    const ExpansionConfig cfg{a.order_p, true, a.window};
    TrainOutcome<double> outcome;
    switch (kind) {
    case ModelKind::Flnn: {
        FlnnOptions<double> opts;
        opts.learning_rate = a.learning_rate;
        opts.epochs = a.epochs;
        outcome = flnn_train(train, cfg, opts);
        break;
    }
    case ModelKind::Elm:
        outcome = elm_train(train, a.hidden, a.seed, a.ridge);
        break;
    case ModelKind::Eelm:
        outcome = eelm_train(train, cfg, a.ridge);
        break;
    }

    PipelineInfo info;
    info.window = static_cast<int>(a.window);
    info.outputs = static_cast<int>(a.outputs);
    info.scale = sp;
    info.season = a.season;
    info.horizon = resolution_name(horizon);
    save_model(a.out, outcome.state, info);

    const Matrix<double> pred = predict(outcome.state, test.inputs);
    const EvalReport report = evaluate(test.targets, pred, outcome.training_time);
    std::cout << "saved " << a.model << " state to " << a.out << '\n'
              << "training rmse " << outcome.training_rmse << ", test rmse " << report.rmse
              << ", training time " << outcome.training_time << " s\n";
}

void run_predict(const std::string& data, const std::string& state_path,
                 const std::string& out) {
    const SavedModel saved = load_model(state_path);
    if (!saved.pipeline)
        throw DataError("state file lacks the pipeline block needed to prepare data");
    const PipelineInfo& info = *saved.pipeline;

    TimeSeries working = parse_csv(data, Resolution::FiveMinute);
    if (!info.season.empty())
        working = filter_season(working, season_window(parse_season(info.season)));
    if (parse_resolution(info.horizon) == Resolution::OneHour) working = resample_hourly(working);

    const TimeSeries scaled = apply_scale(working, info.scale);
    const PatternSet<double> patterns = make_patterns(scaled, info.window, info.outputs);
    const Matrix<double> pred = predict(saved.state, patterns.inputs);

    std::ofstream trace(out);
    if (!trace) throw DataError("cannot write trace file '" + out + "'");
    trace << "timestamp,target,prediction\n";
    char buf[64];
    for (Index i = 0; i < patterns.count(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", patterns.targets(i, 0), pred(i, 0));
        trace << format_timestamp(patterns.target_times[static_cast<std::size_t>(i)]) << ','
              << buf << '\n';
    }

    const EvalReport report = evaluate(patterns.targets, pred);
    std::cout << "wrote " << patterns.count() << " predictions to " << out << '\n'
              << "rmse " << report.rmse << ", mae " << report.mae << ", smape " << report.smape
              << ", cc2 " << report.cc2 << '\n';
}

struct BenchArgs {
    std::string spec_path;
    std::string format = "markdown";
    std::string out; // overrides spec output_dir when set
    std::optional<std::uint64_t> seed;
    std::optional<int> elm_trials;
    std::optional<int> repeat;
};

void run_bench(const BenchArgs& a) {
    ExperimentSpec spec = parse_spec_json(a.spec_path);
    if (!a.out.empty()) spec.output_dir = a.out;
    if (a.seed) spec.hyper.seed = *a.seed;
    if (a.elm_trials) spec.hyper.elm_trials = *a.elm_trials;
    if (a.repeat) spec.timing_repeats = *a.repeat;

    TableFormat format = TableFormat::Markdown;
    const char* ext = "md";
    if (a.format == "csv") {
        format = TableFormat::Csv;
        ext = "csv";
    } else if (a.format == "json") {
        format = TableFormat::Json;
        ext = "json";
    } else if (a.format != "markdown") {
        throw DataError("unknown format '" + a.format + "' (expected markdown, csv, or json)");
    }

    const ResultTable rt = run_experiment(spec);
    const std::string table = emit_table(rt, format);
    std::cout << table;
    if (!spec.output_dir.empty()) {
        const auto path = spec.output_dir / (std::string("table.") + ext);
        std::ofstream out_file(path);
        if (!out_file) throw DataError("cannot write '" + path.string() + "'");
        out_file << table;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solar power forecasting toolkit"};
    app.require_subcommand(1);

    std::string ingest_path;
    std::string ingest_resolution = "5min";
    CLI::App* ingest = app.add_subcommand("ingest", "Validate and summarize a power CSV");
    ingest->add_option("csv", ingest_path, "Input CSV file")->required();
    ingest->add_option("--resolution", ingest_resolution, "Sample resolution: 5min or 1h");

    int synth_days = 120;
    std::string synth_season = "all";
    std::uint64_t synth_seed = 7;
    bool synth_clear = false;
    double synth_peak = 25.0;
    std::string synth_out;
    CLI::App* synth = app.add_subcommand("synth", "Write a synthetic power CSV");
    synth->add_option("--days", synth_days, "Days per season")->check(CLI::PositiveNumber);
    synth->add_option("--season", synth_season, "summer, rainy, winter, or all");
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_flag("--clear-sky", synth_clear, "Disable cloud attenuation");
    synth->add_option("--peak", synth_peak, "Plant peak output in MW");
    synth->add_option("--out", synth_out, "Output CSV path")->required();

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Fit one model and save its JSON state");
    train->add_option("--data", train_args.data, "Input CSV file")->required();
    train->add_option("--model", train_args.model, "flnn, elm, or eelm")->required();
    train->add_option("--season", train_args.season, "Optional seasonal filter");
    train->add_option("--horizon", train_args.horizon, "5min or 1h");
    train->add_option("--out", train_args.out, "Output state path")->required();
    train->add_option("--window", train_args.window, "Input window length n");
    train->add_option("--outputs", train_args.outputs, "Forecast outputs m");
    train->add_option("--order-p", train_args.order_p, "Trigonometric expansion order");
    train->add_option("--hidden", train_args.hidden, "ELM hidden units");
    train->add_option("--lr", train_args.learning_rate, "FLNN learning rate");
    train->add_option("--epochs", train_args.epochs, "FLNN training epochs");
    train->add_option("--ridge", train_args.ridge, "Ridge regularization lambda");
    train->add_option("--train-fraction", train_args.train_fraction, "Chronological split");
    train->add_option("--seed", train_args.seed, "ELM weight seed");
    train->add_flag("--scale-all", train_args.scale_all,
                    "Fit the scaling on the whole series instead of the train slice");

    std::string predict_data;
    std::string predict_state;
    std::string predict_out;
    CLI::App* pred = app.add_subcommand("predict", "Load a state file and emit a trace");
    pred->add_option("--data", predict_data, "Input CSV file")->required();
    pred->add_option("--state", predict_state, "Trained model JSON state")->required();
    pred->add_option("--out", predict_out, "Output trace CSV path")->required();

    BenchArgs bench_args;
    std::uint64_t bench_seed = 0;
    int bench_trials = 0;
    int bench_repeat = 0;
    CLI::App* bench = app.add_subcommand("bench", "Run the full experiment matrix");
    bench->add_option("spec", bench_args.spec_path, "Experiment spec JSON file")->required();
    bench->add_option("--format", bench_args.format, "Table format: markdown, csv, or json");
    bench->add_option("--out", bench_args.out, "Output directory override");
    CLI::Option* seed_opt = bench->add_option("--seed", bench_seed, "Model seed override");
    CLI::Option* trials_opt =
        bench->add_option("--elm-trials", bench_trials, "Seeds per ELM cell, reported mean/std");
    CLI::Option* repeat_opt =
        bench->add_option("--repeat", bench_repeat, "Timing repeats per cell (median)");

    try {
        app.parse(argc, argv);
        if (*ingest) run_ingest(ingest_path, ingest_resolution);
        if (*synth)
            run_synth(synth_days, synth_season, synth_seed, synth_clear, synth_peak, synth_out);
        if (*train) run_train(train_args);
        if (*pred) run_predict(predict_data, predict_state, predict_out);
        if (*bench) {
            if (seed_opt->count() > 0) bench_args.seed = bench_seed;
            if (trials_opt->count() > 0) bench_args.elm_trials = bench_trials;
            if (repeat_opt->count() > 0) bench_args.repeat = bench_repeat;
            run_bench(bench_args);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const solarcast::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const solarcast::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
