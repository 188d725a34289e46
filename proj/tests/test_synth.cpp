#include <doctest.h>

#include <set>
#include <sstream>

#include "bordermdl/synth.hpp"

using namespace bordermdl;

TEST_CASE("manifest lists every injection") {
    SynthConfig config;
    config.days = 30;
    config.dominance = 0.95;
    config.injections = 20;
    const auto data = generate_synthetic(config);
    CHECK(data.injected.size() == 20);
    CHECK(std::set<Timestamp>(data.injected.begin(), data.injected.end()).size() == 20);
    CHECK(std::is_sorted(data.injected.begin(), data.injected.end()));
    std::ostringstream out;
    write_manifest(out, data.injected);
    const auto text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 20);
}

TEST_CASE("record layout follows the feeds") {
    SynthConfig config;
    config.days = 2;
    config.injections = 0;
    const auto data = generate_synthetic(config);
    // Two five-minute feeds and one hourly feed.
    CHECK(data.records.size() == 48 * (12 + 12 + 1));
    for (const auto& r : data.records) {
        CHECK(r.wait_minutes >= 0.0);
        if (r.site == "RB") CHECK(hour_of_day(r.timestamp) == hour_of_day(to_timestamp(floor_hour(r.timestamp))));
    }
}

TEST_CASE("full dominance and no injections gives one repeated hour") {
    SynthConfig config;
    config.days = 3;
    config.dominance = 1.0;
    config.injections = 0;
    const auto data = generate_synthetic(config);
    for (const auto& r : data.records) CHECK(r.wait_minutes == 0.0);
}

TEST_CASE("same seed, same bytes") {
    SynthConfig config;
    config.days = 5;
    config.injections = 4;
    std::ostringstream a, b, c;
    write_records(a, generate_synthetic(config).records);
    write_records(b, generate_synthetic(config).records);
    config.seed = 2;
    write_records(c, generate_synthetic(config).records);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("invalid generator settings") {
    SynthConfig config;
    config.days = 0;
    CHECK_THROWS_AS(generate_synthetic(config), std::invalid_argument);
    config.days = 1;
    config.injections = 25;
    CHECK_THROWS_AS(generate_synthetic(config), std::invalid_argument);
    config.injections = 0;
    config.dominance = 1.5;
    CHECK_THROWS_AS(generate_synthetic(config), std::invalid_argument);
}
