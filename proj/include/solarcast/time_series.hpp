#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "solarcast/errors.hpp"
#include "solarcast/timestamp.hpp"

namespace solarcast {

enum class Resolution { FiveMinute, OneHour };

constexpr int resolution_minutes(Resolution r) noexcept {
    return r == Resolution::FiveMinute ? 5 : 60;
}

struct Sample {
    Timestamp time;
    double power_mw = 0.0;
};

/// Strictly ordered power samples at a nominal resolution. Gaps are
/// allowed; consecutive samples inside a contiguous block sit exactly one
/// resolution step apart.
struct TimeSeries {
    std::vector<Sample> samples;
    Resolution resolution = Resolution::FiveMinute;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
};

enum class Season { Summer, Rainy, Winter };

/// Calendar months plus the daylight hours that define one seasonal slice
/// of the year. Daylight bounds are inclusive minutes of the day.
struct SeasonWindow {
    Season season = Season::Summer;
    std::vector<int> months;     // calendar months, 1..12
    int daylight_start = 0;      // minute of day
    int daylight_end = 0;        // minute of day, > daylight_start

    bool contains_month(int month) const noexcept;
    bool contains_minute(int minute) const noexcept;
};

/// The canonical seasonal windows: summer Mar-Jun 05:30-18:30, rainy
/// Jul-Oct 06:30-17:30, winter Nov-Feb 08:00-16:00.
SeasonWindow season_window(Season s);

const char* season_name(Season s) noexcept;
const char* resolution_name(Resolution r) noexcept;

/// Min-max bounds used to map power to the unit interval and back.
struct ScaleParams {
    double x_min = 0.0;
    double x_max = 1.0;
};

/// Reads `timestamp,power_mw` CSV rows into a series at the declared
/// resolution. Rows must be in strictly increasing time order; negative or
/// unparsable fields reject the row with its line number.
TimeSeries parse_csv(const std::filesystem::path& path, Resolution resolution);
TimeSeries parse_csv(std::istream& in, Resolution resolution);

void write_csv(const TimeSeries& ts, const std::filesystem::path& path);
void write_csv(const TimeSeries& ts, std::ostream& out);

/// Keeps exactly the samples whose month and time of day fall inside the
/// window. Idempotent; throws EmptyResult when nothing survives.
TimeSeries filter_season(const TimeSeries& ts, const SeasonWindow& w);

/// Collapses a five-minute series to one sample per clock hour holding the
/// mean of that hour's available samples, stamped at the hour start. Hours
/// without samples are omitted.
TimeSeries resample_hourly(const TimeSeries& ts);

ScaleParams fit_scale(const TimeSeries& ts);
/// Fit on the leading `count` samples only (chronological train slice).
ScaleParams fit_scale(const TimeSeries& ts, std::size_t count);

inline double scale_value(double x, const ScaleParams& sp) noexcept {
    return (x - sp.x_min) / (sp.x_max - sp.x_min);
}
inline double unscale_value(double u, const ScaleParams& sp) noexcept {
    return u * (sp.x_max - sp.x_min) + sp.x_min;
}

/// Maps every value through (x - x_min)/(x_max - x_min). Values outside
/// the fitted range map outside [0,1]; nothing is clamped, so the inverse
/// map recovers the original series.
TimeSeries apply_scale(const TimeSeries& ts, const ScaleParams& sp);
TimeSeries inverse_scale(const TimeSeries& ts, const ScaleParams& sp);

/// Maximal [begin, end) index runs whose consecutive timestamps are exactly
/// one resolution step apart.
std::vector<std::pair<std::size_t, std::size_t>> contiguous_blocks(const TimeSeries& ts);

} // namespace solarcast
