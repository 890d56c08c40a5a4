#include "solarcast/time_series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace solarcast {

bool SeasonWindow::contains_month(int month) const noexcept {
    return std::find(months.begin(), months.end(), month) != months.end();
}

bool SeasonWindow::contains_minute(int minute) const noexcept {
    return minute >= daylight_start && minute <= daylight_end;
}

SeasonWindow season_window(Season s) {
    switch (s) {
    case Season::Summer:
        return {Season::Summer, {3, 4, 5, 6}, 5 * 60 + 30, 18 * 60 + 30};
    case Season::Rainy:
        return {Season::Rainy, {7, 8, 9, 10}, 6 * 60 + 30, 17 * 60 + 30};
    case Season::Winter:
        return {Season::Winter, {11, 12, 1, 2}, 8 * 60, 16 * 60};
    }
    throw DataError("unknown season");
}

const char* season_name(Season s) noexcept {
    switch (s) {
    case Season::Summer: return "summer";
    case Season::Rainy: return "rainy";
    case Season::Winter: return "winter";
    }
    return "?";
}

const char* resolution_name(Resolution r) noexcept {
    return r == Resolution::FiveMinute ? "5min" : "1h";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    return s;
}

double parse_power(std::string_view field, std::size_t line) {
    field = trim(field);
    if (field.empty()) throw MalformedRow(line, "empty power field");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw MalformedRow(line, "unparsable power value '" + std::string(field) + "'");
    if (!std::isfinite(value)) throw MalformedRow(line, "non-finite power value");
    if (value < 0.0) throw MalformedRow(line, "negative power value");
    return value;
}

} // namespace

TimeSeries parse_csv(std::istream& in, Resolution resolution) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("input has no content");
    if (trim(line) != "timestamp,power_mw")
        throw MalformedRow(1, "expected header 'timestamp,power_mw'");

    TimeSeries ts;
    ts.resolution = resolution;
    std::size_t line_no = 1;
    std::int64_t prev_minutes = std::numeric_limits<std::int64_t>::min();
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos) throw MalformedRow(line_no, "missing comma");
        Timestamp t;
        try {
            t = parse_timestamp(trim(row.substr(0, comma)));
        } catch (const DataError& e) {
            throw MalformedRow(line_no, e.what());
        }
        const double power = parse_power(row.substr(comma + 1), line_no);
        const std::int64_t minutes = minutes_since_epoch(t);
        if (minutes <= prev_minutes)
            throw NonMonotonicTimestamps("timestamps not strictly increasing at line " +
                                         std::to_string(line_no));
        prev_minutes = minutes;
        ts.samples.push_back({t, power});
    }
    if (ts.samples.empty()) throw EmptyFile("no data rows");
    return ts;
}

TimeSeries parse_csv(const std::filesystem::path& path, Resolution resolution) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return parse_csv(in, resolution);
}

void write_csv(const TimeSeries& ts, std::ostream& out) {
    out << "timestamp,power_mw\n";
    char buf[40];
    for (const Sample& s : ts.samples) {
        std::snprintf(buf, sizeof buf, "%.17g", s.power_mw);
        out << format_timestamp(s.time) << ',' << buf << '\n';
    }
}

void write_csv(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    write_csv(ts, out);
}

TimeSeries filter_season(const TimeSeries& ts, const SeasonWindow& w) {
    TimeSeries out;
    out.resolution = ts.resolution;
    for (const Sample& s : ts.samples)
        if (w.contains_month(s.time.month) && w.contains_minute(minute_of_day(s.time)))
            out.samples.push_back(s);
    if (out.samples.empty()) throw EmptyResult("no samples inside the seasonal window");
    return out;
}

TimeSeries resample_hourly(const TimeSeries& ts) {
    if (ts.resolution != Resolution::FiveMinute)
        throw WrongResolution("hourly resampling expects a five-minute series");
    TimeSeries out;
    out.resolution = Resolution::OneHour;

    std::size_t i = 0;
    while (i < ts.samples.size()) {
        const std::int64_t hour_start = minutes_since_epoch(ts.samples[i].time) / 60 * 60;
        double sum = 0.0;
        std::size_t count = 0;
        while (i < ts.samples.size() &&
               minutes_since_epoch(ts.samples[i].time) / 60 * 60 == hour_start) {
            sum += ts.samples[i].power_mw;
            ++count;
            ++i;
        }
        out.samples.push_back(
            {timestamp_from_minutes(hour_start), sum / static_cast<double>(count)});
    }
    return out;
}

ScaleParams fit_scale(const TimeSeries& ts) { return fit_scale(ts, ts.samples.size()); }

ScaleParams fit_scale(const TimeSeries& ts, std::size_t count) {
    count = std::min(count, ts.samples.size());
    if (count == 0) throw EmptyInput("cannot fit scaling on an empty series");
    double lo = ts.samples[0].power_mw;
    double hi = lo;
    for (std::size_t i = 1; i < count; ++i) {
        lo = std::min(lo, ts.samples[i].power_mw);
        hi = std::max(hi, ts.samples[i].power_mw);
    }
    if (hi <= lo) throw DegenerateRange("series is constant over the fitted range");
    return {lo, hi};
}

namespace {

TimeSeries map_values(const TimeSeries& ts, const ScaleParams& sp, bool forward) {
    TimeSeries out = ts;
    for (Sample& s : out.samples)
        s.power_mw = forward ? scale_value(s.power_mw, sp) : unscale_value(s.power_mw, sp);
    return out;
}

} // namespace

TimeSeries apply_scale(const TimeSeries& ts, const ScaleParams& sp) {
    if (!(sp.x_max > sp.x_min)) throw DegenerateRange("x_max must exceed x_min");
    return map_values(ts, sp, true);
}

TimeSeries inverse_scale(const TimeSeries& ts, const ScaleParams& sp) {
    if (!(sp.x_max > sp.x_min)) throw DegenerateRange("x_max must exceed x_min");
    return map_values(ts, sp, false);
}

std::vector<std::pair<std::size_t, std::size_t>> contiguous_blocks(const TimeSeries& ts) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    const std::int64_t step = resolution_minutes(ts.resolution);
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= ts.samples.size(); ++i) {
        const bool boundary =
            i == ts.samples.size() || minutes_since_epoch(ts.samples[i].time) -
                                              minutes_since_epoch(ts.samples[i - 1].time) !=
                                          step;
        if (boundary) {
            blocks.emplace_back(begin, i);
            begin = i;
        }
    }
    return blocks;
}

} // namespace solarcast
