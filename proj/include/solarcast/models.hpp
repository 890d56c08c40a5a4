#pragma once

// The three forecasters behind one train/predict surface:
//   - FLNN: trigonometric features, weights fitted by per-pattern LMS.
//   - ELM: random fixed tanh hidden layer, output weights solved
//     analytically by minimum-norm least squares.
//   - EELM: the ELM solve applied to the deterministic trigonometric
//     features, so nothing in the model is random.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "solarcast/expansion.hpp"
#include "solarcast/lstsq.hpp"
#include "solarcast/metrics.hpp"
#include "solarcast/patterns.hpp"

namespace solarcast {

template <typename Scalar>
struct FlnnState {
    ExpansionConfig cfg;
    Matrix<Scalar> weights; // width x m
    Scalar learning_rate = Scalar(0.01);
    int epochs = 100;
};

template <typename Scalar>
struct ElmState {
    Matrix<Scalar> input_weights;  // L x n, fixed at construction
    Vector<Scalar> biases;         // L, fixed at construction
    Matrix<Scalar> output_weights; // L x m, set once by training
    Index hidden_count = 0;
    std::uint64_t seed = 0;
};

template <typename Scalar>
struct EelmState {
    ExpansionConfig cfg;
    Matrix<Scalar> output_weights; // width x m
};

template <typename Scalar>
using ModelState = std::variant<FlnnState<Scalar>, ElmState<Scalar>, EelmState<Scalar>>;

template <typename Scalar>
struct TrainOutcome {
    ModelState<Scalar> state;
    double training_time = 0.0; // seconds, fit computation only
    Scalar training_rmse = Scalar(0);
};

enum class FlnnInit { Zero, SeededUniform };

template <typename Scalar>
struct FlnnOptions {
    Scalar learning_rate = Scalar(0.01);
    int epochs = 100;
    FlnnInit init = FlnnInit::Zero;
    std::uint64_t seed = 0;
    // Optional stop once the epoch-to-epoch training MSE change falls
    // below this threshold.
    std::optional<Scalar> early_stop_tol;
};

namespace detail {

template <typename Scalar>
void check_train_inputs(const PatternSet<Scalar>& train) {
    if (train.count() == 0) throw EmptyInput("no training patterns");
    if (train.outputs() == 0) throw EmptyInput("patterns have no targets");
    if (!train.inputs.allFinite() || !train.targets.allFinite())
        throw NonFiniteEntries("training patterns contain non-finite values");
}

// tanh written through exp: Eigen vectorizes exp for double but not tanh,
// and the hidden-layer build is on the fit's critical path. Saturates to
// exactly +/-1 only once exp overflows, far beyond any scaled input here.
template <typename Scalar>
Matrix<Scalar> elm_hidden(const ElmState<Scalar>& state, const Matrix<Scalar>& X) {
    const Matrix<Scalar> Z =
        (X * state.input_weights.transpose()).rowwise() + state.biases.transpose();
    return (Scalar(1) - Scalar(2) / ((Scalar(2) * Z.array()).exp() + Scalar(1))).matrix();
}

using fit_clock = std::chrono::steady_clock;

inline double seconds_since(fit_clock::time_point start) {
    return std::chrono::duration<double>(fit_clock::now() - start).count();
}

} // namespace detail

/// Per-pattern delta-rule training over the expanded features, repeated
/// for a fixed number of passes in chronological order.
template <typename Scalar>
TrainOutcome<Scalar> flnn_train(const PatternSet<Scalar>& train, const ExpansionConfig& cfg,
                                const FlnnOptions<Scalar>& opts = {}) {
    detail::check_train_inputs(train);
    cfg.validate();
    if (!(opts.learning_rate > Scalar(0))) throw DataError("learning rate must be positive");
    if (opts.epochs < 1) throw DataError("epoch count must be positive");

    const auto start = detail::fit_clock::now();
    const Matrix<Scalar> Z = expand_matrix(train.inputs, cfg);
    const Index s = Z.rows();
    const Index m = train.targets.cols();

    Matrix<Scalar> weights = Matrix<Scalar>::Zero(cfg.width(), m);
    if (opts.init == FlnnInit::SeededUniform) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<Scalar> small(Scalar(-0.01), Scalar(0.01));
        for (Index r = 0; r < weights.rows(); ++r)
            for (Index c = 0; c < weights.cols(); ++c) weights(r, c) = small(rng);
    }

    Vector<Scalar> error(m);
    Scalar prev_mse = Scalar(0);
    for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
        Scalar sq_sum = Scalar(0);
        for (Index i = 0; i < s; ++i) {
            const auto z = Z.row(i).transpose();
            error.noalias() = train.targets.row(i).transpose() - weights.transpose() * z;
            sq_sum += error.squaredNorm();
            weights.noalias() += opts.learning_rate * z * error.transpose();
        }
        if (!weights.allFinite())
            throw DivergenceDetected(static_cast<std::size_t>(epoch),
                                     "weights diverged, reduce the learning rate");
        const Scalar mse = sq_sum / static_cast<Scalar>(s * m);
        if (opts.early_stop_tol && epoch > 1 && std::abs(prev_mse - mse) < *opts.early_stop_tol)
            break;
        prev_mse = mse;
    }

    TrainOutcome<Scalar> out;
    out.training_time = detail::seconds_since(start);
    FlnnState<Scalar> state{cfg, std::move(weights), opts.learning_rate, opts.epochs};
    out.training_rmse = rmse((Z * state.weights).eval(), train.targets);
    out.state = std::move(state);
    return out;
}

/// Random tanh hidden layer of L units with weights and biases drawn
/// uniformly from [-1,1]; output weights solved analytically. Drawing each
/// unit's weights and bias together makes unit j identical across hidden
/// sizes for a fixed seed, so a larger layer extends a smaller one.
template <typename Scalar>
TrainOutcome<Scalar> elm_train(const PatternSet<Scalar>& train, Index hidden_count,
                               std::uint64_t seed, Scalar ridge_lambda = Scalar(0)) {
    detail::check_train_inputs(train);
    if (hidden_count < 1) throw DataError("hidden layer needs at least one unit");

    const auto start = detail::fit_clock::now();
    const Index n = train.window();
    ElmState<Scalar> state;
    state.hidden_count = hidden_count;
    state.seed = seed;
    state.input_weights.resize(hidden_count, n);
    state.biases.resize(hidden_count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Scalar> sym(Scalar(-1), Scalar(1));
    for (Index j = 0; j < hidden_count; ++j) {
        for (Index k = 0; k < n; ++k) state.input_weights(j, k) = sym(rng);
        state.biases(j) = sym(rng);
    }

    const Matrix<Scalar> H = detail::elm_hidden(state, train.inputs);
    state.output_weights = solve_min_norm<Scalar>({H, train.targets, ridge_lambda});

    TrainOutcome<Scalar> out;
    out.training_time = detail::seconds_since(start);
    out.training_rmse = rmse((H * state.output_weights).eval(), train.targets);
    out.state = std::move(state);
    return out;
}

/// Feature expansion plus the analytic solve; no random state anywhere,
/// so repeated training on the same data is bit-identical.
template <typename Scalar>
TrainOutcome<Scalar> eelm_train(const PatternSet<Scalar>& train, const ExpansionConfig& cfg,
                                Scalar ridge_lambda = Scalar(0)) {
    detail::check_train_inputs(train);
    cfg.validate();

    const auto start = detail::fit_clock::now();
    const Matrix<Scalar> H = expand_matrix(train.inputs, cfg);
    EelmState<Scalar> state{cfg, solve_min_norm<Scalar>({H, train.targets, ridge_lambda})};

    TrainOutcome<Scalar> out;
    out.training_time = detail::seconds_since(start);
    out.training_rmse = rmse((H * state.output_weights).eval(), train.targets);
    out.state = std::move(state);
    return out;
}

template <typename Scalar>
Matrix<Scalar> predict(const FlnnState<Scalar>& state, const Matrix<Scalar>& inputs) {
    if (state.weights.size() == 0) throw UntrainedModel("model has no weights");
    if (inputs.cols() != state.cfg.n)
        throw DimensionMismatch("input width does not match the trained window");
    return expand_matrix(inputs, state.cfg) * state.weights;
}

template <typename Scalar>
Matrix<Scalar> predict(const ElmState<Scalar>& state, const Matrix<Scalar>& inputs) {
    if (state.output_weights.size() == 0) throw UntrainedModel("model has no output weights");
    if (inputs.cols() != state.input_weights.cols())
        throw DimensionMismatch("input width does not match the trained window");
    return detail::elm_hidden(state, inputs) * state.output_weights;
}

template <typename Scalar>
Matrix<Scalar> predict(const EelmState<Scalar>& state, const Matrix<Scalar>& inputs) {
    if (state.output_weights.size() == 0) throw UntrainedModel("model has no output weights");
    if (inputs.cols() != state.cfg.n)
        throw DimensionMismatch("input width does not match the trained window");
    return expand_matrix(inputs, state.cfg) * state.output_weights;
}

template <typename Scalar>
Matrix<Scalar> predict(const ModelState<Scalar>& state, const Matrix<Scalar>& inputs) {
    return std::visit([&](const auto& s) { return predict(s, inputs); }, state);
}

} // namespace solarcast
