#pragma once

// Trigonometric feature expansion. Each scalar x becomes
//   x, x^2, sin(pi x), cos(pi x), ..., sin(p pi x), cos(p pi x)
// and a pattern of n scalars concatenates those blocks behind a single
// shared bias column. One bias for the whole pattern (rather than one per
// input) keeps the expanded matrix free of duplicate constant columns.

#include <cmath>
#include <numbers>

#include "solarcast/errors.hpp"
#include "solarcast/types.hpp"

namespace solarcast {

struct ExpansionConfig {
    int order_p = 1;          // trigonometric order, >= 1
    bool include_bias = true; // shared leading constant column
    Index n = 5;              // pattern window length

    Index terms_per_input() const noexcept { return 2 + 2 * static_cast<Index>(order_p); }
    Index width() const noexcept { return (include_bias ? 1 : 0) + n * terms_per_input(); }

    void validate() const {
        if (order_p < 1) throw DataError("expansion order must be >= 1");
        if (n < 0) throw DataError("window length must be nonnegative");
        if (width() < 1) throw DataError("expansion would produce no features");
    }
};

namespace detail {

// Single scalar kernel shared by every expansion entry point so that the
// pattern and matrix forms are bit-identical per element.
template <typename Scalar>
void expand_scalar_into(Scalar x, int order_p, Scalar* out) {
    if (!std::isfinite(static_cast<double>(x))) throw NonFiniteInput("non-finite input value");
    out[0] = x;
    out[1] = x * x;
    for (int k = 1; k <= order_p; ++k) {
        const Scalar arg = static_cast<Scalar>(k) * static_cast<Scalar>(std::numbers::pi) * x;
        out[2 * k] = std::sin(arg);
        out[2 * k + 1] = std::cos(arg);
    }
}

} // namespace detail

/// Feature block of one scalar: [x, x^2, sin(pi x), cos(pi x), ...],
/// length 2 + 2p. The shared bias is not part of this block.
template <typename Scalar>
Vector<Scalar> expand_scalar(Scalar x, const ExpansionConfig& cfg) {
    cfg.validate();
    Vector<Scalar> out(cfg.terms_per_input());
    detail::expand_scalar_into(x, cfg.order_p, out.data());
    return out;
}

/// Expands an n-element pattern row to the full feature vector: optional
/// leading 1, then the per-input blocks in input order.
template <typename Derived>
Vector<typename Derived::Scalar> expand_pattern(const Eigen::MatrixBase<Derived>& row,
                                                const ExpansionConfig& cfg) {
    using Scalar = typename Derived::Scalar;
    cfg.validate();
    if (row.size() != cfg.n)
        throw DimensionMismatch("pattern has " + std::to_string(row.size()) +
                                " inputs, expansion expects " + std::to_string(cfg.n));
    Vector<Scalar> out(cfg.width());
    Index pos = 0;
    if (cfg.include_bias) out[pos++] = Scalar(1);
    const Index block = cfg.terms_per_input();
    for (Index j = 0; j < cfg.n; ++j, pos += block)
        detail::expand_scalar_into(static_cast<Scalar>(row(j)), cfg.order_p, out.data() + pos);
    return out;
}

/// Row-wise expansion of an S x n pattern matrix into S x width features.
template <typename Derived>
Matrix<typename Derived::Scalar> expand_matrix(const Eigen::MatrixBase<Derived>& X,
                                               const ExpansionConfig& cfg) {
    using Scalar = typename Derived::Scalar;
    cfg.validate();
    if (X.cols() != cfg.n)
        throw DimensionMismatch("matrix has " + std::to_string(X.cols()) +
                                " columns, expansion expects " + std::to_string(cfg.n));
    Matrix<Scalar> H(X.rows(), cfg.width());
    const Index block = cfg.terms_per_input();
    Scalar buffer[2 + 2 * 64]; // order_p beyond 64 is rejected below
    if (cfg.order_p > 64) throw DataError("expansion order above 64 is not supported");
    for (Index i = 0; i < X.rows(); ++i) {
        Index pos = 0;
        if (cfg.include_bias) H(i, pos++) = Scalar(1);
        for (Index j = 0; j < cfg.n; ++j, pos += block) {
            detail::expand_scalar_into(static_cast<Scalar>(X(i, j)), cfg.order_p, buffer);
            for (Index k = 0; k < block; ++k) H(i, pos + k) = buffer[k];
        }
    }
    return H;
}

} // namespace solarcast
