#pragma once

// Minute-resolution civil timestamps. Values are plain local wall-clock
// times; there is no zone or DST handling anywhere in the library.

#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "solarcast/errors.hpp"

namespace solarcast {

struct Timestamp {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;   // 0..23
    int minute = 0; // 0..59

    auto operator<=>(const Timestamp&) const = default;
};

namespace detail {

// Proleptic Gregorian day count relative to 1970-01-01.
constexpr std::int64_t days_from_civil(int y, int m, int d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr void civil_from_days(std::int64_t z, int& y, int& m, int& d) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

constexpr bool is_leap(int y) noexcept {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr int days_in_month(int y, int m) noexcept {
    constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : lengths[m - 1];
}

} // namespace detail

inline bool valid(const Timestamp& t) noexcept {
    return t.month >= 1 && t.month <= 12 && t.day >= 1 &&
           t.day <= detail::days_in_month(t.year, t.month) && t.hour >= 0 && t.hour <= 23 &&
           t.minute >= 0 && t.minute <= 59;
}

/// Minutes since 1970-01-01T00:00. Total order compatible with operator<=>.
inline std::int64_t minutes_since_epoch(const Timestamp& t) noexcept {
    return detail::days_from_civil(t.year, t.month, t.day) * 1440 + t.hour * 60 + t.minute;
}

inline Timestamp timestamp_from_minutes(std::int64_t total) noexcept {
    std::int64_t days = total / 1440;
    std::int64_t rem = total % 1440;
    if (rem < 0) {
        rem += 1440;
        --days;
    }
    Timestamp t;
    detail::civil_from_days(days, t.year, t.month, t.day);
    t.hour = static_cast<int>(rem / 60);
    t.minute = static_cast<int>(rem % 60);
    return t;
}

inline int minute_of_day(const Timestamp& t) noexcept { return t.hour * 60 + t.minute; }

/// Parses "YYYY-MM-DDTHH:MM" (a space may stand in for 'T'; an optional
/// trailing ":SS" must be zero). Throws DataError on anything else.
inline Timestamp parse_timestamp(std::string_view text) {
    const auto fail = [&] { throw DataError("invalid timestamp '" + std::string(text) + "'"); };
    const auto digits = [&](std::size_t pos, std::size_t count) {
        int value = 0;
        if (pos + count > text.size()) fail();
        for (std::size_t i = pos; i < pos + count; ++i) {
            const char c = text[i];
            if (c < '0' || c > '9') fail();
            value = value * 10 + (c - '0');
        }
        return value;
    };

    if (text.size() < 16) fail();
    Timestamp t;
    t.year = digits(0, 4);
    if (text[4] != '-') fail();
    t.month = digits(5, 2);
    if (text[7] != '-') fail();
    t.day = digits(8, 2);
    if (text[10] != 'T' && text[10] != ' ') fail();
    t.hour = digits(11, 2);
    if (text[13] != ':') fail();
    t.minute = digits(14, 2);
    if (text.size() > 16) {
        if (text.size() != 19 || text[16] != ':' || digits(17, 2) != 0) fail();
    }
    if (!valid(t)) fail();
    return t;
}

inline std::string format_timestamp(const Timestamp& t) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d", t.year, t.month, t.day, t.hour,
                  t.minute);
    return buf;
}

} // namespace solarcast
