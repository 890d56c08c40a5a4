#pragma once

#include <utility>
#include <vector>

#include "solarcast/time_series.hpp"
#include "solarcast/types.hpp"

namespace solarcast {

/// Supervised sliding-window pairs: row i of `inputs` holds `n` consecutive
/// values and row i of `targets` the `m` values that immediately follow
/// them in the source series. `target_times` stamps each row with the time
/// of its first target sample.
template <typename Scalar = double>
struct PatternSet {
    Matrix<Scalar> inputs;  // S x n
    Matrix<Scalar> targets; // S x m
    std::vector<Timestamp> target_times;

    Index count() const noexcept { return inputs.rows(); }
    Index window() const noexcept { return inputs.cols(); }
    Index outputs() const noexcept { return targets.cols(); }
};

/// Builds stride-1 sliding windows per contiguous block of the series, so
/// no window ever spans a gap. Throws InsufficientData when no block is
/// long enough to yield a pattern.
template <typename Scalar = double>
PatternSet<Scalar> make_patterns(const TimeSeries& ts, Index n, Index m) {
    if (n < 1 || m < 1) throw DataError("window and output counts must be positive");

    const auto blocks = contiguous_blocks(ts);
    Index total = 0;
    for (const auto& [begin, end] : blocks) {
        const Index len = static_cast<Index>(end - begin);
        if (len >= n + m) total += len - n - m + 1;
    }
    if (total == 0)
        throw InsufficientData("series has no contiguous run of " + std::to_string(n + m) +
                               " samples");

    PatternSet<Scalar> ps;
    ps.inputs.resize(total, n);
    ps.targets.resize(total, m);
    ps.target_times.reserve(static_cast<std::size_t>(total));
    Index row = 0;
    for (const auto& [begin, end] : blocks) {
        const Index len = static_cast<Index>(end - begin);
        for (Index i = 0; i + n + m <= len; ++i) {
            const std::size_t base = begin + static_cast<std::size_t>(i);
            for (Index j = 0; j < n; ++j)
                ps.inputs(row, j) = static_cast<Scalar>(ts.samples[base + j].power_mw);
            for (Index j = 0; j < m; ++j)
                ps.targets(row, j) = static_cast<Scalar>(ts.samples[base + n + j].power_mw);
            ps.target_times.push_back(ts.samples[base + n].time);
            ++row;
        }
    }
    return ps;
}

/// Chronological split: the first floor(train_fraction * S) patterns train,
/// the rest test. No shuffling.
template <typename Scalar>
std::pair<PatternSet<Scalar>, PatternSet<Scalar>> split_patterns(const PatternSet<Scalar>& ps,
                                                                 double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("train fraction must lie in (0,1)");
    const Index s = ps.count();
    const Index s_trn = static_cast<Index>(train_fraction * static_cast<double>(s));
    if (s_trn < 1 || s_trn >= s)
        throw EmptySplit("split would leave an empty train or test side");

    const auto slice = [&](Index begin, Index count) {
        PatternSet<Scalar> part;
        part.inputs = ps.inputs.middleRows(begin, count);
        part.targets = ps.targets.middleRows(begin, count);
        part.target_times.assign(ps.target_times.begin() + begin,
                                 ps.target_times.begin() + begin + count);
        return part;
    };
    return {slice(0, s_trn), slice(s_trn, s - s_trn)};
}

} // namespace solarcast
