#include <sstream>

#include "doctest.h"
#include "testutil.hpp"

#include "solarcast/time_series.hpp"

using namespace solarcast;

TEST_CASE("parse_csv reads well-formed rows") {
    std::istringstream in(
        "timestamp,power_mw\n"
        "2006-03-15T10:00,12.5\n"
        "2006-03-15T10:05,13.0\n");
    const TimeSeries ts = parse_csv(in, Resolution::FiveMinute);
    REQUIRE(ts.size() == 2);
    CHECK(ts.samples[0].time == Timestamp{2006, 3, 15, 10, 0});
    CHECK(ts.samples[0].power_mw == 12.5);
    CHECK(ts.samples[1].time == Timestamp{2006, 3, 15, 10, 5});
    CHECK(ts.samples[1].power_mw == 13.0);
    CHECK(ts.resolution == Resolution::FiveMinute);
}

TEST_CASE("parse_csv rejects out-of-order rows") {
    std::istringstream in(
        "timestamp,power_mw\n"
        "2006-03-15T10:05,13.0\n"
        "2006-03-15T10:00,12.5\n");
    CHECK_THROWS_AS(parse_csv(in, Resolution::FiveMinute), NonMonotonicTimestamps);
}

TEST_CASE("parse_csv rejects negative power with the line number") {
    std::istringstream in(
        "timestamp,power_mw\n"
        "2006-03-15T10:00,12.5\n"
        "2006-03-15T10:05,-1.0\n");
    try {
        parse_csv(in, Resolution::FiveMinute);
        FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
        CHECK(e.line_number == 3);
    }
}

TEST_CASE("parse_csv rejects unparsable fields and bad headers") {
    std::istringstream garbage(
        "timestamp,power_mw\n"
        "2006-03-15T10:00,twelve\n");
    CHECK_THROWS_AS(parse_csv(garbage, Resolution::FiveMinute), MalformedRow);

    std::istringstream header("time,power\n2006-03-15T10:00,1.0\n");
    CHECK_THROWS_AS(parse_csv(header, Resolution::FiveMinute), MalformedRow);

    std::istringstream empty("");
    CHECK_THROWS_AS(parse_csv(empty, Resolution::FiveMinute), EmptyFile);
}

TEST_CASE("csv writing round-trips exactly") {
    std::mt19937_64 rng(11);
    const TimeSeries ts = testutil::series_from_values(testutil::random_values(rng, 50, 0.0, 25.0));
    std::ostringstream out;
    write_csv(ts, out);
    std::istringstream in(out.str());
    const TimeSeries back = parse_csv(in, Resolution::FiveMinute);
    REQUIRE(back.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(back.samples[i].time == ts.samples[i].time);
        CHECK(back.samples[i].power_mw == ts.samples[i].power_mw);
    }
}

TEST_CASE("the canonical season windows") {
    const SeasonWindow summer = season_window(Season::Summer);
    CHECK(summer.months == std::vector<int>{3, 4, 5, 6});
    CHECK(summer.daylight_start == 5 * 60 + 30);
    CHECK(summer.daylight_end == 18 * 60 + 30);

    const SeasonWindow rainy = season_window(Season::Rainy);
    CHECK(rainy.months == std::vector<int>{7, 8, 9, 10});
    CHECK(rainy.daylight_start == 6 * 60 + 30);
    CHECK(rainy.daylight_end == 17 * 60 + 30);

    const SeasonWindow winter = season_window(Season::Winter);
    CHECK(winter.months == std::vector<int>{11, 12, 1, 2});
    CHECK(winter.daylight_start == 8 * 60);
    CHECK(winter.daylight_end == 16 * 60);
}

TEST_CASE("filter_season keeps daylight samples of the season's months") {
    TimeSeries ts;
    ts.samples = {
        {{2006, 3, 15, 5, 0}, 1.0},  // before daylight
        {{2006, 3, 15, 10, 0}, 2.0}, // kept
        {{2006, 7, 1, 12, 0}, 3.0},  // July is not a summer month
    };
    const TimeSeries kept = filter_season(ts, season_window(Season::Summer));
    REQUIRE(kept.size() == 1);
    CHECK(kept.samples[0].power_mw == 2.0);

    SUBCASE("daylight bounds are inclusive") {
        TimeSeries edges;
        edges.samples = {
            {{2006, 4, 1, 5, 25}, 1.0},
            {{2006, 4, 1, 5, 30}, 2.0},
            {{2006, 4, 1, 18, 30}, 3.0},
            {{2006, 4, 1, 18, 35}, 4.0},
        };
        const TimeSeries in = filter_season(edges, season_window(Season::Summer));
        REQUIRE(in.size() == 2);
        CHECK(in.samples[0].power_mw == 2.0);
        CHECK(in.samples[1].power_mw == 3.0);
    }

    SUBCASE("winter spans the year boundary") {
        TimeSeries wrap;
        wrap.samples = {
            {{2006, 12, 30, 12, 0}, 1.0},
            {{2007, 1, 2, 12, 0}, 2.0},
            {{2007, 3, 2, 12, 0}, 3.0},
        };
        const TimeSeries in = filter_season(wrap, season_window(Season::Winter));
        REQUIRE(in.size() == 2);
    }
}

TEST_CASE("filter_season is idempotent and can be empty") {
    std::mt19937_64 rng(3);
    const TimeSeries ts =
        testutil::series_from_values(testutil::random_values(rng, 300, 0.0, 25.0),
                                     {2006, 3, 14, 16, 0});
    const SeasonWindow w = season_window(Season::Summer);
    const TimeSeries once = filter_season(ts, w);
    const TimeSeries twice = filter_season(once, w);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(once.samples[i].time == twice.samples[i].time);

    TimeSeries night;
    night.samples = {{{2006, 3, 15, 2, 0}, 1.0}};
    CHECK_THROWS_AS(filter_season(night, w), EmptyResult);
}

TEST_CASE("resample_hourly averages each clock hour") {
    SUBCASE("constant hour") {
        const TimeSeries ts = testutil::series_from_values(std::vector<double>(12, 6.0));
        const TimeSeries hourly = resample_hourly(ts);
        REQUIRE(hourly.size() == 1);
        CHECK(hourly.samples[0].time == Timestamp{2006, 3, 15, 10, 0});
        CHECK(hourly.samples[0].power_mw == 6.0);
        CHECK(hourly.resolution == Resolution::OneHour);
    }
    SUBCASE("ramp averages to 5.5") {
        std::vector<double> ramp(12);
        for (int i = 0; i < 12; ++i) ramp[static_cast<std::size_t>(i)] = i;
        const TimeSeries hourly = resample_hourly(testutil::series_from_values(ramp));
        REQUIRE(hourly.size() == 1);
        CHECK(hourly.samples[0].power_mw == doctest::Approx(5.5).epsilon(1e-12));
    }
    SUBCASE("partial hours average what is present") {
        TimeSeries ts;
        ts.samples = {
            {{2006, 3, 15, 10, 50}, 2.0},
            {{2006, 3, 15, 10, 55}, 4.0},
            {{2006, 3, 15, 11, 0}, 9.0},
        };
        const TimeSeries hourly = resample_hourly(ts);
        REQUIRE(hourly.size() == 2);
        CHECK(hourly.samples[0].power_mw == doctest::Approx(3.0));
        CHECK(hourly.samples[1].power_mw == doctest::Approx(9.0));
    }
    SUBCASE("hourly input is rejected") {
        const TimeSeries hourly =
            testutil::series_from_values({1.0, 2.0}, {2006, 3, 15, 10, 0}, Resolution::OneHour);
        CHECK_THROWS_AS(resample_hourly(hourly), WrongResolution);
    }
    SUBCASE("output length is at most ceil(input/12)") {
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 20; ++rep) {
            const auto count = 1 + rng() % 300;
            const TimeSeries ts = testutil::series_from_values(
                testutil::random_values(rng, count, 0.0, 25.0), {2006, 3, 15, 0, 0});
            const TimeSeries hourly = resample_hourly(ts);
            CHECK(hourly.size() <= (ts.size() + 11) / 12);
        }
    }
}

TEST_CASE("fit_scale finds the series extrema") {
    CHECK_THROWS_AS(fit_scale(testutil::series_from_values({4.0, 4.0, 4.0})), DegenerateRange);

    const ScaleParams a = fit_scale(testutil::series_from_values({0.0, 12.5, 25.0}));
    CHECK(a.x_min == 0.0);
    CHECK(a.x_max == 25.0);

    const ScaleParams b = fit_scale(testutil::series_from_values({3.2, 7.9, 5.1}));
    CHECK(b.x_min == 3.2);
    CHECK(b.x_max == 7.9);

    SUBCASE("the train-slice overload ignores the tail") {
        const ScaleParams c = fit_scale(testutil::series_from_values({1.0, 2.0, 99.0}), 2);
        CHECK(c.x_min == 1.0);
        CHECK(c.x_max == 2.0);
    }
}

TEST_CASE("apply_scale maps by the min-max rule without clamping") {
    const ScaleParams sp{0.0, 25.0};
    const TimeSeries ts = testutil::series_from_values({0.0, 25.0, 12.5, 30.0});
    const TimeSeries scaled = apply_scale(ts, sp);
    CHECK(scaled.samples[0].power_mw == doctest::Approx(0.0));
    CHECK(scaled.samples[1].power_mw == doctest::Approx(1.0));
    CHECK(scaled.samples[2].power_mw == doctest::Approx(0.5));
    CHECK(scaled.samples[3].power_mw == doctest::Approx(1.2));
}

TEST_CASE("scaling round-trips and stays in the unit interval") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const TimeSeries ts =
            testutil::series_from_values(testutil::random_values(rng, 40, 0.0, 25.0));
        const ScaleParams sp = fit_scale(ts);
        const TimeSeries scaled = apply_scale(ts, sp);
        for (const Sample& s : scaled.samples) {
            CHECK(s.power_mw >= 0.0);
            CHECK(s.power_mw <= 1.0);
        }
        const TimeSeries back = inverse_scale(scaled, sp);
        for (std::size_t i = 0; i < ts.size(); ++i)
            CHECK(back.samples[i].power_mw ==
                  doctest::Approx(ts.samples[i].power_mw).epsilon(1e-12));
    }
}

TEST_CASE("contiguous_blocks splits on gaps") {
    TimeSeries ts = testutil::series_from_values({1, 2, 3, 4, 5, 6});
    auto one = contiguous_blocks(ts);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::pair<std::size_t, std::size_t>{0, 6});

    // Remove one sample to create a gap.
    ts.samples.erase(ts.samples.begin() + 3);
    auto two = contiguous_blocks(ts);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == std::pair<std::size_t, std::size_t>{0, 3});
    CHECK(two[1] == std::pair<std::size_t, std::size_t>{3, 5});
}
