#pragma once

// Raw wait-time records to hourly categorical transactions.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "bordermdl/item.hpp"
#include "bordermdl/timeutil.hpp"

namespace bordermdl {

enum class Direction : std::uint8_t { ToUS, ToCanada };
enum class VehicleClass : std::uint8_t { Car, Truck };

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(VehicleClass v) noexcept;
/// Case-insensitive; throws std::invalid_argument.
Direction parse_direction(std::string_view text);
VehicleClass parse_vehicle_class(std::string_view text);

struct WaitTimeRecord {
    Timestamp timestamp;
    std::string site;
    Direction direction = Direction::ToUS;
    VehicleClass vehicle_class = VehicleClass::Car;
    double wait_minutes = 0.0;
};

/// Header names for each record field.
struct RecordSchema {
    std::string timestamp = "timestamp";
    std::string site = "site";
    std::string direction = "direction";
    std::string vehicle_class = "vehicle_class";
    std::string wait_minutes = "wait_minutes";
    char delimiter = ',';
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based input line, 0 when not tied to a line
    std::string message;
};

struct ParseResult {
    std::vector<WaitTimeRecord> records;
    std::vector<Diagnostic> diagnostics;
    std::size_t rejected_rows = 0;
    std::size_t duplicate_rows = 0;
};

/// Fatal ingest failure: unreadable input or missing mandatory column.
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses delimiter-separated records with a header row. Unparseable rows are
/// skipped with a per-row diagnostic. Duplicate (site, direction, class,
/// timestamp) keys keep the last occurrence.
ParseResult parse_records(std::istream& input, const RecordSchema& schema = {});

struct HourKey {
    std::string site;
    Direction direction = Direction::ToUS;
    VehicleClass vehicle_class = VehicleClass::Car;
    Hour hour;

    friend auto operator<=>(const HourKey& a, const HourKey& b) {
        return std::tie(a.site, a.direction, a.vehicle_class, a.hour) <=>
               std::tie(b.site, b.direction, b.vehicle_class, b.hour);
    }
    friend bool operator==(const HourKey&, const HourKey&) = default;
};

using HourlyMeans = std::map<HourKey, double>;

/// Mean wait per (site, direction, class, clock hour). Hours without records
/// are absent.
HourlyMeans aggregate_hourly(std::span<const WaitTimeRecord> records);

/// Category for a mean wait: 0 -> 1, (0,15] -> 2, (15,30] -> 3, >30 -> 4.
/// Throws std::domain_error for negative or NaN input.
Category discretize(double mean_wait);

/// One hourly row of the database: one item per configured attribute, in
/// configured attribute order.
struct Transaction {
    Timestamp timestamp;
    std::vector<Item> items;
};

/// Items sorted into canonical itemset order.
Itemset item_set(const Transaction& txn);

struct BuildResult {
    std::vector<Transaction> transactions;
    std::size_t excluded_hours = 0;
    std::vector<Diagnostic> diagnostics;
};

/// Assembles one transaction per hour where every attribute has a value for
/// the chosen scenario. Throws std::invalid_argument if `attributes` is
/// empty, repeats a site, or names a site with no data in the scenario.
BuildResult build_transactions(const HourlyMeans& hourly, std::span<const std::string> attributes,
                               Direction direction, VehicleClass vehicle_class);

}  // namespace bordermdl
