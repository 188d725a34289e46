#pragma once

// Deterministic synthetic wait-time feeds with planted anomalous hours.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bordermdl/ingest.hpp"

namespace bordermdl {

struct SynthSite {
    std::string name;
    Category dominant = Category::NoWaiting;
    bool five_minute = true;  // false: one record per hour
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int days = 30;
    std::string start_date = "2016-08-22";
    /// Probability that a site shows its dominant category in a given hour.
    double dominance = 0.95;
    int injections = 20;
    /// Category every site takes during an injected hour.
    Category injected_category = Category::HeavyDelay;
    Direction direction = Direction::ToCanada;
    VehicleClass vehicle_class = VehicleClass::Car;
    std::vector<SynthSite> sites = {
        {"PB", Category::NoWaiting, true},
        {"LQ", Category::NoWaiting, true},
        {"RB", Category::NoWaiting, false},
    };
};

struct SynthData {
    std::vector<WaitTimeRecord> records;
    /// Injected hours, ascending.
    std::vector<Timestamp> injected;
};

/// Each site-hour independently keeps its dominant category with probability
/// `dominance` and otherwise moves one category up (down from heavy delay).
/// Injected hours override every site with `injected_category`. Wait values
/// are integer minutes drawn inside the category's interval, so the hourly
/// mean lands in the same category.
SynthData generate_synthetic(const SynthConfig& config);

void write_records(std::ostream& out, const std::vector<WaitTimeRecord>& records);
/// One injected hour per line.
void write_manifest(std::ostream& out, const std::vector<Timestamp>& injected);

}  // namespace bordermdl
