#include "solarcast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace solarcast {

namespace {

struct Tone {
    double weight, freq, phase; // freq in cycles per day
};

std::vector<Tone> make_band(std::mt19937_64& rng, double f_lo, double f_hi, int count,
                            double mass) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Tone> tones(static_cast<std::size_t>(count));
    double sum = 0.0;
    for (Tone& t : tones) {
        t.weight = 0.5 + unit(rng);
        sum += t.weight;
        t.freq = f_lo + (f_hi - f_lo) * unit(rng);
        t.phase = 2.0 * std::numbers::pi * unit(rng);
    }
    for (Tone& t : tones) t.weight *= mass / sum;
    return tones;
}

double eval_band(const std::vector<Tone>& band, double u) {
    double s = 0.0;
    for (const Tone& t : band) s += t.weight * std::sin(2.0 * std::numbers::pi * t.freq * u + t.phase);
    return s;
}

// Seeded sky state: slow fronts and intra-day drift set the ambient cloud
// level; a near-Nyquist texture band supplies minutes-scale flicker that no
// five-sample window resolves. Each season draws its own tones.
class SkyDrivers {
public:
    SkyDrivers(std::uint64_t seed, Season season) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(season) * 0x9E3779B97F4A7C15ULL);
        fronts_ = make_band(rng, 0.15, 0.6, 2, 0.17);  // periods of roughly 2-7 days
        intra_ = make_band(rng, 2.0, 8.0, 3, 0.08);    // 3-12 h
        texture_ = make_band(rng, 103.0, 180.0, 24, 0.04); // 8-14 min
    }

    // Ambient attenuation level before the clearing trend, centred on 0.50.
    double ambient(double u) const { return 0.50 + eval_band(fronts_, u) + eval_band(intra_, u); }

    double texture(double u) const { return eval_band(texture_, u); }

private:
    std::vector<Tone> fronts_, intra_, texture_;
};

// Smooth clamp of y into [lo, hi]: identity over the core, exponential knees
// over the outer tenth, so the bound never creates a flat rail.
double squash(double y, double lo, double hi) {
    const double w = hi - lo;
    if (w < 1e-12) return hi;
    const double m = 0.10;
    double t = (y - lo) / w;
    if (t < m)
        t = m * std::exp((t - m) / m);
    else if (t > 1.0 - m)
        t = 1.0 - m * std::exp((1.0 - m - t) / m);
    return lo + w * t;
}

// Cloud-field dynamics, run on normalised power y = clear * attenuation.
// Mean reversion tracks the ambient level; the sin(pi y) term is a convective
// pulse that is strongest at half cover and dies off toward both clear sky
// and full overcast, which is where real cumulus fields are most volatile.
constexpr double kReversion = 0.42;
constexpr double kConvective = 0.07;

// Clearing trend over the last fifth of a run: the ambient level rises by
// kClearing as the wet regime retreats, so late days are sunnier than the
// bulk of the season.
constexpr double kClearing = 0.28;

double clearing(double run) {
    const double t = std::clamp((run - 0.80) / 0.12, 0.0, 1.0);
    return kClearing * t * t * (3 - 2 * t);
}

} // namespace

TimeSeries generate_synthetic(const SyntheticConfig& cfg) {
    if (cfg.days < 1) throw DataError("day count must be positive");

    const SeasonWindow window = season_window(cfg.season);
    const SkyDrivers sky(cfg.seed, cfg.season);
    const double span = static_cast<double>(window.daylight_end - window.daylight_start);

    TimeSeries ts;
    ts.resolution = Resolution::FiveMinute;
    ts.samples.reserve(static_cast<std::size_t>(cfg.days) * 288);

    int season_year = cfg.start_year;
    std::int64_t day = detail::days_from_civil(season_year, window.months.front(), 1);
    for (int d = 0; d < cfg.days; ++d) {
        Timestamp date = timestamp_from_minutes(day * 1440);
        if (!window.contains_month(date.month)) {
            // Ran past the season; continue in the next year's window.
            ++season_year;
            day = detail::days_from_civil(season_year, window.months.front(), 1);
            date = timestamp_from_minutes(day * 1440);
        }
        double y = 0.0;
        for (int minute = 0; minute < 1440; minute += 5) {
            double power = 0.0;
            if (minute >= window.daylight_start && minute <= window.daylight_end) {
                const double phase = (minute - window.daylight_start) / span;
                const double clear = std::sin(std::numbers::pi * phase);
                if (cfg.clear_sky) {
                    power = cfg.peak_mw * clear;
                } else {
                    const double u = static_cast<double>(day) + minute / 1440.0;
                    const double run = (d + minute / 1440.0) / static_cast<double>(cfg.days);
                    const double ambient = sky.ambient(u) + clearing(run);
                    if (minute == window.daylight_start) y = clear * ambient;
                    const double y_raw = y + kReversion * (clear * ambient - y) +
                                         kConvective * std::sin(std::numbers::pi * y) +
                                         sky.texture(u);
                    // Attenuation y / clear stays inside [0.2, 1].
                    y = squash(y_raw, 0.2 * clear, clear);
                    power = cfg.peak_mw * y;
                }
            }
            Timestamp t = date;
            t.hour = minute / 60;
            t.minute = minute % 60;
            ts.samples.push_back({t, power});
        }
        ++day;
    }
    return ts;
}

} // namespace solarcast
