#include "bordermdl/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <set>

#include <fmt/format.h>

namespace bordermdl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    while (true) {
        const auto pos = line.find(delimiter);
        fields.push_back(trim(line.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        line.remove_prefix(pos + 1);
    }
    return fields;
}

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace

std::string_view to_string(Direction d) noexcept { return d == Direction::ToUS ? "ToUS" : "ToCanada"; }

std::string_view to_string(VehicleClass v) noexcept { return v == VehicleClass::Car ? "Car" : "Truck"; }

Direction parse_direction(std::string_view text) {
    if (iequals(text, "ToUS")) return Direction::ToUS;
    if (iequals(text, "ToCanada")) return Direction::ToCanada;
    throw std::invalid_argument(fmt::format("unknown direction '{}'", text));
}

VehicleClass parse_vehicle_class(std::string_view text) {
    if (iequals(text, "Car")) return VehicleClass::Car;
    if (iequals(text, "Truck")) return VehicleClass::Truck;
    throw std::invalid_argument(fmt::format("unknown vehicle class '{}'", text));
}

ParseResult parse_records(std::istream& input, const RecordSchema& schema) {
    if (!input.good()) throw IngestError("input stream is not readable");

    std::string line;
    if (!std::getline(input, line)) throw IngestError("input has no header row");

    const auto header = split(line, schema.delimiter);
    auto column_of = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw IngestError(fmt::format("missing mandatory column '{}'", name));
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_time = column_of(schema.timestamp);
    const std::size_t c_site = column_of(schema.site);
    const std::size_t c_dir = column_of(schema.direction);
    const std::size_t c_class = column_of(schema.vehicle_class);
    const std::size_t c_wait = column_of(schema.wait_minutes);

    ParseResult result;
    using Key = std::tuple<std::string, Direction, VehicleClass, Timestamp>;
    std::map<Key, std::size_t> seen;

    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, schema.delimiter);
        auto reject = [&](std::string message) {
            result.diagnostics.push_back({line_no, std::move(message)});
            ++result.rejected_rows;
        };
        if (fields.size() != header.size()) {
            reject(fmt::format("expected {} fields, found {}", header.size(), fields.size()));
            continue;
        }

        WaitTimeRecord rec;
        const auto ts = parse_timestamp(fields[c_time]);
        if (!ts) {
            reject(fmt::format("bad timestamp '{}'", fields[c_time]));
            continue;
        }
        rec.timestamp = *ts;
        rec.site = std::string(fields[c_site]);
        if (rec.site.empty()) {
            reject("empty site");
            continue;
        }
        try {
            rec.direction = parse_direction(fields[c_dir]);
            rec.vehicle_class = parse_vehicle_class(fields[c_class]);
        } catch (const std::invalid_argument& e) {
            reject(e.what());
            continue;
        }
        const auto wait = parse_double(fields[c_wait]);
        if (!wait) {
            reject(fmt::format("bad wait '{}'", fields[c_wait]));
            continue;
        }
        if (*wait < 0.0) {
            reject("negative wait");
            continue;
        }
        rec.wait_minutes = *wait;

        Key key{rec.site, rec.direction, rec.vehicle_class, rec.timestamp};
        if (const auto it = seen.find(key); it != seen.end()) {
            result.diagnostics.push_back(
                {line_no, fmt::format("duplicate record for {} {} {} {}, keeping last", rec.site,
                                      to_string(rec.direction), to_string(rec.vehicle_class),
                                      format_timestamp(rec.timestamp))});
            ++result.duplicate_rows;
            result.records[it->second] = std::move(rec);
            continue;
        }
        seen.emplace(std::move(key), result.records.size());
        result.records.push_back(std::move(rec));
    }
    if (input.bad()) throw IngestError("read error on input stream");
    return result;
}

HourlyMeans aggregate_hourly(std::span<const WaitTimeRecord> records) {
    std::map<HourKey, std::pair<double, std::size_t>> sums;
    for (const auto& r : records) {
        auto& [sum, n] = sums[HourKey{r.site, r.direction, r.vehicle_class, floor_hour(r.timestamp)}];
        sum += r.wait_minutes;
        ++n;
    }
    HourlyMeans means;
    for (auto& [key, acc] : sums) {
        means.emplace_hint(means.end(), key, acc.first / static_cast<double>(acc.second));
    }
    return means;
}

Category discretize(double mean_wait) {
    if (std::isnan(mean_wait) || mean_wait < 0.0) {
        throw std::domain_error(fmt::format("wait time must be non-negative, got {}", mean_wait));
    }
    if (mean_wait == 0.0) return Category::NoWaiting;
    if (mean_wait <= 15.0) return Category::SlightDelay;
    if (mean_wait <= 30.0) return Category::Delay;
    return Category::HeavyDelay;
}

Itemset item_set(const Transaction& txn) { return canonicalize(txn.items); }

BuildResult build_transactions(const HourlyMeans& hourly, std::span<const std::string> attributes,
                               Direction direction, VehicleClass vehicle_class) {
    if (attributes.empty()) throw std::invalid_argument("attribute list is empty");
    const std::set<std::string> distinct(attributes.begin(), attributes.end());
    if (distinct.size() != attributes.size()) throw std::invalid_argument("attribute list repeats a site");

    // hour -> per-attribute category, in attribute order
    std::map<Hour, std::vector<std::optional<Category>>> rows;
    std::vector<std::size_t> per_attribute(attributes.size(), 0);
    for (const auto& [key, mean] : hourly) {
        if (key.direction != direction || key.vehicle_class != vehicle_class) continue;
        const auto it = std::find(attributes.begin(), attributes.end(), key.site);
        if (it == attributes.end()) continue;
        const auto slot = static_cast<std::size_t>(it - attributes.begin());
        auto& row = rows[key.hour];
        row.resize(attributes.size());
        row[slot] = discretize(mean);
        ++per_attribute[slot];
    }
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (per_attribute[i] == 0) {
            throw std::invalid_argument(fmt::format("unknown attribute '{}': no records for {} {}", attributes[i],
                                                    to_string(direction), to_string(vehicle_class)));
        }
    }

    BuildResult result;
    for (const auto& [hour, row] : rows) {
        if (std::any_of(row.begin(), row.end(), [](const auto& c) { return !c.has_value(); })) {
            ++result.excluded_hours;
            continue;
        }
        Transaction txn{to_timestamp(hour), {}};
        txn.items.reserve(attributes.size());
        for (std::size_t i = 0; i < attributes.size(); ++i) txn.items.push_back(Item{attributes[i], *row[i]});
        result.transactions.push_back(std::move(txn));
    }
    if (result.transactions.empty()) {
        result.diagnostics.push_back(
            {0, fmt::format("no complete hours; {} hour(s) excluded for missing attributes", result.excluded_hours)});
    }
    return result;
}

}  // namespace bordermdl
