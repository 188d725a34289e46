#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bordermdl {

/// Minute-resolution wall-clock time in the configured local timezone. No
/// timezone or DST conversion is applied anywhere.
using Timestamp = std::chrono::sys_time<std::chrono::minutes>;
using Hour = std::chrono::sys_time<std::chrono::hours>;

/// Accepts "YYYY-MM-DDTHH:MM", "YYYY-MM-DD HH:MM", optionally followed by ":SS"
/// (seconds are truncated). Returns nullopt on anything else.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// "YYYY-MM-DDTHH:MM"
std::string format_timestamp(Timestamp t);

inline Hour floor_hour(Timestamp t) { return std::chrono::floor<std::chrono::hours>(t); }

inline Timestamp to_timestamp(Hour h) { return std::chrono::time_point_cast<std::chrono::minutes>(h); }

int hour_of_day(Timestamp t);

}  // namespace bordermdl
