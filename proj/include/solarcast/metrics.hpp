#pragma once

// Forecast error measures over paired target/prediction collections. All
// four are computed on scaled (per-unit) values; rmse and mae share the
// target's unit, smape is a percentage, cc2 is the squared Pearson
// correlation in [0,1].

#include <cmath>

#include "solarcast/errors.hpp"
#include "solarcast/types.hpp"

namespace solarcast {

namespace detail {

template <typename DerivedD, typename DerivedO>
void check_pair(const Eigen::MatrixBase<DerivedD>& d, const Eigen::MatrixBase<DerivedO>& o) {
    if (d.rows() != o.rows() || d.cols() != o.cols())
        throw LengthMismatch("target and prediction shapes differ");
    if (d.size() == 0) throw EmptyInput("no points to evaluate");
}

} // namespace detail

/// Root mean square error: sqrt(sum((d - o)^2) / count).
template <typename DerivedD, typename DerivedO>
typename DerivedD::Scalar rmse(const Eigen::MatrixBase<DerivedD>& d,
                               const Eigen::MatrixBase<DerivedO>& o) {
    using Scalar = typename DerivedD::Scalar;
    detail::check_pair(d, o);
    const Scalar sse = (d.reshaped().array() - o.reshaped().array()).square().sum();
    return std::sqrt(sse / static_cast<Scalar>(d.size()));
}

/// Mean absolute error: sum(|d - o|) / count.
template <typename DerivedD, typename DerivedO>
typename DerivedD::Scalar mae(const Eigen::MatrixBase<DerivedD>& d,
                              const Eigen::MatrixBase<DerivedO>& o) {
    using Scalar = typename DerivedD::Scalar;
    detail::check_pair(d, o);
    return (d.reshaped().array() - o.reshaped().array()).abs().sum() /
           static_cast<Scalar>(d.size());
}

/// Aggregate-ratio symmetric percentage error:
/// 100 * sum(|d - o|) / sum(d + o). This is the aggregate form, not the
/// per-point-mean variant; it stays finite when individual targets are
/// zero and only degenerates when the sums cancel entirely.
template <typename DerivedD, typename DerivedO>
typename DerivedD::Scalar smape(const Eigen::MatrixBase<DerivedD>& d,
                                const Eigen::MatrixBase<DerivedO>& o) {
    using Scalar = typename DerivedD::Scalar;
    detail::check_pair(d, o);
    const Scalar denom = (d.reshaped().array() + o.reshaped().array()).sum();
    if (denom == Scalar(0))
        throw ZeroDenominator("targets and predictions sum to zero");
    return Scalar(100) * (d.reshaped().array() - o.reshaped().array()).abs().sum() / denom;
}

/// Squared Pearson correlation between targets and predictions, computed
/// in centered form for stability. Equals the raw-moment ratio
/// (S*sum(do) - sum(d)sum(o))^2 / ((S*sum(d^2)-sum(d)^2)(S*sum(o^2)-sum(o)^2)).
template <typename DerivedD, typename DerivedO>
typename DerivedD::Scalar cc2(const Eigen::MatrixBase<DerivedD>& d,
                              const Eigen::MatrixBase<DerivedO>& o) {
    using Scalar = typename DerivedD::Scalar;
    detail::check_pair(d, o);
    if (d.size() < 2) throw ConstantVector("correlation needs at least two points");
    const auto dv = d.reshaped().array();
    const auto ov = o.reshaped().array();
    const Scalar d_mean = dv.mean();
    const Scalar o_mean = ov.mean();
    const Scalar cov = ((dv - d_mean) * (ov - o_mean)).sum();
    const Scalar var_d = (dv - d_mean).square().sum();
    const Scalar var_o = (ov - o_mean).square().sum();
    if (var_d == Scalar(0) || var_o == Scalar(0))
        throw ConstantVector("correlation undefined for a constant vector");
    return (cov * cov) / (var_d * var_o);
}

/// One benchmark-table cell: the four measures plus bookkeeping.
struct EvalReport {
    double rmse = 0.0;
    double mae = 0.0;
    double smape = 0.0;
    double cc2 = 0.0;
    Index n_points = 0;
    double training_time = 0.0; // seconds of the fit call
};

template <typename DerivedD, typename DerivedO>
EvalReport evaluate(const Eigen::MatrixBase<DerivedD>& d, const Eigen::MatrixBase<DerivedO>& o,
                    double training_time = 0.0) {
    EvalReport r;
    r.rmse = static_cast<double>(rmse(d, o));
    r.mae = static_cast<double>(mae(d, o));
    r.smape = static_cast<double>(smape(d, o));
    r.cc2 = static_cast<double>(cc2(d, o));
    r.n_points = d.size();
    r.training_time = training_time;
    return r;
}

} // namespace solarcast
