#pragma once

#include <cstdint>

#include "solarcast/time_series.hpp"

namespace solarcast {

/// Synthetic plant profile: per day, a clear-sky half-sine across the
/// season's daylight window scaled to `peak_mw`, multiplied by a seeded
/// smooth cloud-attenuation process in [0.2, 1]; zero outside daylight.
struct SyntheticConfig {
    int days = 1;
    Season season = Season::Summer;
    std::uint64_t seed = 0;
    bool clear_sky = false; // attenuation pinned to 1
    double peak_mw = 25.0;
    int start_year = 2006;
};

/// Deterministic for a given config; five-minute resolution, full calendar
/// days confined to the season's months.
TimeSeries generate_synthetic(const SyntheticConfig& cfg);

inline TimeSeries generate_synthetic(int days, Season season, std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.days = days;
    cfg.season = season;
    cfg.seed = seed;
    return generate_synthetic(cfg);
}

} // namespace solarcast
