#include "bordermdl/synth.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace bordermdl {

namespace {

// Fixed mappings from raw engine output; std distributions differ across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    int between(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

Category deviate(Category c) {
    return c == Category::HeavyDelay ? Category::Delay : static_cast<Category>(index_of(c) + 1);
}

int draw_wait(Rng& rng, Category c) {
    switch (c) {
        case Category::NoWaiting: return 0;
        case Category::SlightDelay: return rng.between(1, 15);
        case Category::Delay: return rng.between(16, 30);
        case Category::HeavyDelay: return rng.between(31, 90);
    }
    return 0;
}

}  // namespace

SynthData generate_synthetic(const SynthConfig& config) {
    if (config.days < 1) throw std::invalid_argument("days must be >= 1");
    if (!(config.dominance >= 0.0 && config.dominance <= 1.0)) {
        throw std::invalid_argument("dominance must lie in [0, 1]");
    }
    const int hours = config.days * 24;
    if (config.injections < 0 || config.injections > hours) {
        throw std::invalid_argument(fmt::format("injections must lie in [0, {}]", hours));
    }
    if (config.sites.empty()) throw std::invalid_argument("no sites configured");
    const auto start = parse_timestamp(config.start_date + "T00:00");
    if (!start) throw std::invalid_argument(fmt::format("bad start date '{}'", config.start_date));

    Rng rng(config.seed);

    // Partial Fisher-Yates over hour offsets.
    std::vector<int> offsets(static_cast<std::size_t>(hours));
    for (int i = 0; i < hours; ++i) offsets[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < config.injections; ++i) {
        const int j = rng.between(i, hours - 1);
        std::swap(offsets[static_cast<std::size_t>(i)], offsets[static_cast<std::size_t>(j)]);
    }
    std::vector<bool> injected(static_cast<std::size_t>(hours), false);
    SynthData data;
    for (int i = 0; i < config.injections; ++i) injected[static_cast<std::size_t>(offsets[static_cast<std::size_t>(i)])] = true;

    for (int h = 0; h < hours; ++h) {
        const Timestamp hour_start = *start + std::chrono::hours{h};
        const bool planted = injected[static_cast<std::size_t>(h)];
        if (planted) data.injected.push_back(hour_start);
        for (const auto& site : config.sites) {
            Category c = site.dominant;
            if (planted) {
                c = config.injected_category;
            } else if (rng.uniform() >= config.dominance) {
                c = deviate(c);
            }
            const int samples = site.five_minute ? 12 : 1;
            for (int s = 0; s < samples; ++s) {
                data.records.push_back(WaitTimeRecord{hour_start + std::chrono::minutes{5 * s}, site.name,
                                                      config.direction, config.vehicle_class,
                                                      static_cast<double>(draw_wait(rng, c))});
            }
        }
    }
    return data;
}

void write_records(std::ostream& out, const std::vector<WaitTimeRecord>& records) {
    fmt::print(out, "timestamp,site,direction,vehicle_class,wait_minutes\n");
    for (const auto& r : records) {
        fmt::print(out, "{},{},{},{},{}\n", format_timestamp(r.timestamp), r.site, to_string(r.direction),
                   to_string(r.vehicle_class), r.wait_minutes);
    }
}

void write_manifest(std::ostream& out, const std::vector<Timestamp>& injected) {
    for (const auto& t : injected) fmt::print(out, "{}\n", format_timestamp(t));
}

}  // namespace bordermdl
